# Batch benchmark harness over directories of PGM mammograms
