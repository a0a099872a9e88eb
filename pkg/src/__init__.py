# K3,3 saturation toolkit package
