# Test package for baryopt
