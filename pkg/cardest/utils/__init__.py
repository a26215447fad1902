# cardest. GNU GPL-3.0 (see LICENSE file)
