"""Color-set projections of dominant eigenvectors (min-normalized per set).

Each entry is (white set, black set); non-simply-laced types carry a left
row and a right row.
"""

COLOR_SETS = {
    "A3": [((1.000, 1.000), (1.000,))],
    "A4": [((1.000, 1.618), (1.000, 1.618))],
    "A5": [((1.000, 1.000, 2.000), (1.000, 1.000))],
    "A7": [((1.000, 1.000, 2.414, 2.414), (1.000, 1.000, 1.414))],
    "B2": [((1.000,), (1.000,)), ((1.000,), (1.000,))],
    "B3": [((1.000, 1.000), (1.000,)), ((1.000, 2.000), (1.000,))],
    "B4": [((1.000, 2.414), (1.000, 1.414)), ((1.000, 2.414), (1.000, 1.414))],
    "B5": [((1.000, 1.618, 2.618), (1.000, 1.618)), ((1.000, 2.618, 3.236), (1.000, 1.618))],
    "B6": [((1.000, 2.732, 3.732), (1.000, 1.000, 1.732)), ((1.000, 2.732, 3.732), (1.000, 1.732, 2.000))],
    "B7": [((1.000, 2.247, 2.802, 4.049), (1.000, 1.802, 2.247)), ((1.000, 2.802, 4.049, 4.494), (1.000, 1.802, 2.247))],
    "B8": [((1.000, 2.848, 4.262, 5.027), (1.000, 1.307, 1.848, 2.414)),
           ((1.000, 2.848, 4.262, 5.027), (1.000, 1.848, 2.414, 2.613))],
    "B9": [((1.000, 2.879, 2.879, 4.411, 5.411), (1.000, 1.879, 2.532, 2.879)),
           ((1.000, 2.879, 4.411, 5.411, 5.759), (1.000, 1.879, 2.532, 2.879))],
    "C3": [((1.000, 2.000), (1.000,)), ((1.000, 1.000), (1.000,))],
    "C4": [((1.000, 2.414), (1.000, 1.414)), ((1.000, 2.414), (1.000, 1.414))],
    "C5": [((1.000, 2.618, 3.236), (1.000, 1.618)), ((1.000, 1.618, 2.618), (1.000, 1.618))],
    "C6": [((1.000, 2.732, 3.732), (1.000, 1.732, 2.000)), ((1.000, 2.732, 3.732), (1.000, 1.000, 1.732))],
    "C7": [((1.000, 2.802, 4.049, 4.494), (1.000, 1.802, 2.247)), ((1.000, 2.247, 2.802, 4.049), (1.000, 1.802, 2.247))],
    "C8": [((1.000, 2.848, 4.262, 5.027), (1.000, 1.848, 2.414, 2.613)),
           ((1.000, 2.848, 4.262, 5.027), (1.000, 1.307, 1.848, 2.414))],
    "C9": [((1.000, 2.879, 4.411, 5.411, 5.759), (1.000, 1.879, 2.532, 2.879)),
           ((1.000, 2.879, 2.879, 4.411, 5.411), (1.000, 1.879, 2.532, 2.879))],
    "D4": [((1.000, 1.000, 1.000), (1.000,))],
    "D5": [((1.000, 1.000, 1.414), (1.000, 2.414))],
    "D6": [((1.000, 1.618, 1.618, 2.618), (1.000, 1.618))],
    "D7": [((1.000, 1.000, 1.000, 1.732), (1.000, 2.732, 3.732))],
    "E6": [((1.000, 1.000, 2.732), (1.000, 1.366, 1.366))],
    "E7": [((1.000, 1.879, 2.532, 2.879), (1.000, 1.532, 2.879))],
    "E8": [((1.000, 1.618, 2.956, 4.783), (1.000, 1.209, 1.618, 1.956))],
    "F4": [((1.000, 1.366), (1.000, 2.732)), ((1.000, 2.732), (1.000, 1.366))],
    "G2": [((1.000,), (1.000,)), ((1.000,), (1.000,))],
}
