"""Reference values used by ``verify``: the published exact values plus a
few pinned computed facts (marked below).

Window values are keyed by (n, m, r); table rows list delta_r(i) for
i = 0..9; d_k rows carry the index of their first prime.
"""

from fractions import Fraction as F

INTRO_VALUES = {
    (3, 6, 1): F(7, 20),
    (3, 7, 1): F(1, 3),
    (3, 7, 0): F(8, 15),
    (3, 8, 1): F(38, 105),
}

DELTA_ROWS = {
    0: [F(1, 2), F(1, 3), F(4, 15), F(8, 35), F(16, 77), F(192, 1001), F(3072, 17017),
        F(55296, 323323), F(110592, 676039), F(442368, 2800733)],
    1: [F(1, 2), F(1, 2), F(7, 15), F(46, 105), F(44, 105), F(288, 715), F(33216, 85085),
        F(613248, 1616615), F(151296, 408595), F(391584768, 1078282205)],
    2: [F(0), F(1, 6), F(7, 30), F(4, 15), F(326, 1155), F(628, 2145), F(992, 3315),
        F(98304, 323323), F(125568, 408595), F(733440, 2369851)],
    3: [F(0), F(0), F(1, 30), F(13, 210), F(31, 385), F(206, 2145), F(1308, 12155),
        F(81544, 692835), F(738544, 5870865), F(61026496, 462120945)],
    4: [F(0), F(0), F(0), F(1, 210), F(23, 2310), F(1, 65), F(734, 36465), F(336, 13585),
        F(35272, 1225785), F(103905392, 3234846615)],
}

# d_1 starts at p_0 = 2, the others at p_1 = 3 (leading zeros included)
D_ROWS = {
    1: (0, [F(1, 2), F(1, 6), F(1, 15), F(4, 105), F(8, 385), F(16, 1001), F(192, 17017),
            F(3072, 323323), F(55296, 7436429), F(110592, 19605131), F(442368, 86822723)]),
    2: (1, [F(1, 6), F(1, 10), F(1, 15), F(46, 1155), F(44, 1365), F(288, 12155),
            F(33216, 1616615), F(613248, 37182145), F(151296, 11849255),
            F(391584768, 33426748355)]),
    3: (1, [F(0), F(1, 30), F(1, 30), F(4, 165), F(326, 15015), F(628, 36465), F(992, 62985),
            F(98304, 7436429), F(125568, 11849255), F(733440, 73465381)]),
    4: (1, [F(0), F(0), F(1, 210), F(13, 2310), F(31, 5005), F(206, 36465), F(1308, 230945),
            F(81544, 15935205), F(738544, 170255085), F(61026496, 14325749295)]),
    5: (1, [F(0), F(0), F(0), F(1, 2310), F(23, 30030), F(1, 1105), F(734, 692835),
            F(336, 312455), F(35272, 35547765), F(103905392, 100280245065)]),
}

K4_WITNESS = (F(31, 5005), F(206, 36465), F(1308, 230945))

DELTA2_TAIL_START = 23

# computed, not published: m in [3, 10^5] where prod_{p<=m}(1-1/p) > 1/(2 ln m) fails
HALF_LOG_EXCEPTIONS = [3, 4, 5, 6, 7, 8, 11, 13]
