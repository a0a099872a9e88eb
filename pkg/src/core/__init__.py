# Core functionality package

