# Objective quality measures between an original image and a detector output
