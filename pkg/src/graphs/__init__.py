# Graph core package
