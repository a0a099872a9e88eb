# Exhaustive and randomized search package
