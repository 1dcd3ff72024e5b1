# Edge detectors: classical operators, Canny pipeline and fuzzy hybrids
