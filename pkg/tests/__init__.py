# Tests package for Stabilis
