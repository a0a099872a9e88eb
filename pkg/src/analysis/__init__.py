# Pattern, saturation and discharging analysis package
