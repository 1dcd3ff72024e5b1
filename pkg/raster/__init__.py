# Raster core: images, edge maps, PGM I/O and neighborhood access
