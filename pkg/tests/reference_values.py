"""Frozen reference values used across the suite.

Tables are transcribed once and never regenerated from the library, so a
regression in the counting code cannot silently update its own oracle.
"""

# closed terms, 1-open terms, 2-open terms: sizes 0..14
L0 = (0, 0, 1, 1, 3, 6, 17, 41, 116, 313, 895, 2550, 7450, 21881, 65168)
L1 = (0, 1, 1, 3, 5, 15, 34, 98, 258, 743, 2098, 6142, 17988, 53614, 160619)
L2 = (0, 1, 2, 3, 8, 18, 49, 130, 364, 1032, 2987, 8758, 26000, 77937, 235677)

# plain environments, sizes 0..18 (initial values of the holonomic recurrence)
ENVIRONMENTS = (
    1, 1, 4, 17, 77, 364, 1776, 8881, 45296, 234806, 1233816, 6558106,
    35202448, 190568779, 1039296373, 5704834700, 31494550253,
    174759749005, 974155147162,
)

PLAIN_CLOSURES_SMALL = (0, 1, 3)

# closed closures, sizes 0..49.  The source listing labels two rows "21";
# the second one is size 22.
CLOSED_CLOSURES = (
    0,  # 0
    0,  # 1
    1,  # 2
    2,  # 3
    6,  # 4
    18,  # 5
    58,  # 6
    188,  # 7
    630,  # 8
    2140,  # 9
    7384,  # 10
    25775,  # 11
    90919,  # 12
    323529,  # 13
    1160285,  # 14
    4189666,  # 15
    15221235,  # 16
    55602475,  # 17
    204119165,  # 18
    752691547,  # 19
    2786900678,  # 20
    10357265495,  # 21
    38623769249,  # 22
    144488013135,  # 23
    542090016461,  # 24
    2039291268600,  # 25
    7690787869550,  # 26
    29071665271653,  # 27
    110130490287410,  # 28
    418043342219865,  # 29
    1589843149170521,  # 30
    6056959298323505,  # 31
    23113998858734867,  # 32
    88343015816573484,  # 33
    338147576768474959,  # 34
    1296106542004047500,  # 35
    4974412840517200748,  # 36
    19115189068830345885,  # 37
    73539781161982872915,  # 38
    283234718823200209560,  # 39
    1092009621308203935814,  # 40
    4214435736178031843666,  # 41
    16280366813995192858378,  # 42
    62947860010954764058213,  # 43
    243596693995304845906020,  # 44
    943448667650667612945764,  # 45
    3656836859592859541767133,  # 46
    14184639891328996401070032,  # 47
    55060786067960705278258741,  # 48
    213877295469617703331719718,  # 49
)

RHO_PLAIN = 0.165476
RHO_TERMS = 0.29559
C_E = 0.699997
C_C = 0.174999
C_TERMS = 0.60676
SHALLOW_153 = 0.25000324068941554
