# Amenability workbench package
