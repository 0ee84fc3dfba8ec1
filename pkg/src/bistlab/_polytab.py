"""Verified maximal-length feedback taps.

Generated by tools/gen_polytab.py; do not edit by hand. Every
entry was proven primitive (irreducibility plus order test
against the full factorization of 2^n - 1) before being written
here. Masks hold coefficients x^0..x^(n-1); see registers.py.
"""

TAPS = {
    2: (0x3,),  # (2,1,0)
    3: (0x3, 0x5,),  # (3,1,0); (3,2,0)
    4: (0x3, 0x9,),  # (4,1,0); (4,3,0)
    5: (0x5, 0x9,),  # (5,2,0); (5,3,0)
    6: (0x3, 0x21,),  # (6,1,0); (6,5,0)
    7: (0x3, 0x9,),  # (7,1,0); (7,3,0)
    8: (0x1d, 0x2b,),  # (8,4,3,2,0); (8,5,3,1,0)
    9: (0x11, 0x21,),  # (9,4,0); (9,5,0)
    10: (0x9, 0x81,),  # (10,3,0); (10,7,0)
    11: (0x5, 0x201,),  # (11,2,0); (11,9,0)
    12: (0x53, 0x69,),  # (12,6,4,1,0); (12,6,5,3,0)
    13: (0x1b, 0x27,),  # (13,4,3,1,0); (13,5,2,1,0)
    14: (0x2b, 0x39,),  # (14,5,3,1,0); (14,5,4,3,0)
    15: (0x3, 0x11,),  # (15,1,0); (15,4,0)
    16: (0x2d, 0x39,),  # (16,5,3,2,0); (16,5,4,3,0)
    17: (0x9, 0x21,),  # (17,3,0); (17,5,0)
    18: (0x81, 0x801,),  # (18,7,0); (18,11,0)
    19: (0x27, 0x47,),  # (19,5,2,1,0); (19,6,2,1,0)
    20: (0x9, 0x20001,),  # (20,3,0); (20,17,0)
    21: (0x5, 0x80001,),  # (21,2,0); (21,19,0)
    22: (0x3, 0x200001,),  # (22,1,0); (22,21,0)
    23: (0x21, 0x201,),  # (23,5,0); (23,9,0)
    24: (0x1b, 0x87,),  # (24,4,3,1,0); (24,7,2,1,0)
    25: (0x9, 0x81,),  # (25,3,0); (25,7,0)
    26: (0x47, 0x4d,),  # (26,6,2,1,0); (26,6,3,2,0)
    27: (0x27, 0xd1,),  # (27,5,2,1,0); (27,7,6,4,0)
    28: (0x9, 0x201,),  # (28,3,0); (28,9,0)
    29: (0x5, 0x8000001,),  # (29,2,0); (29,27,0)
    30: (0x53, 0x113,),  # (30,6,4,1,0); (30,8,4,1,0)
    31: (0x9, 0x41,),  # (31,3,0); (31,6,0)
    32: (0xc5, 0x125,),  # (32,7,6,2,0); (32,8,5,2,0)
    33: (0x2001, 0x100001,),  # (33,13,0); (33,20,0)
    34: (0x119, 0x223,),  # (34,8,4,3,0); (34,9,5,1,0)
    35: (0x5, 0x200000001,),  # (35,2,0); (35,33,0)
    36: (0x801, 0x2000001,),  # (36,11,0); (36,25,0)
    37: (0x53, 0x71,),  # (37,6,4,1,0); (37,6,5,4,0)
    38: (0x63, 0xa3,),  # (38,6,5,1,0); (38,7,5,1,0)
    39: (0x11, 0x101,),  # (39,4,0); (39,8,0)
    40: (0x39, 0x1a1,),  # (40,5,4,3,0); (40,8,7,5,0)
    41: (0x9, 0x100001,),  # (41,3,0); (41,20,0)
    42: (0x99, 0xa5,),  # (42,7,4,3,0); (42,7,5,2,0)
    43: (0x59, 0x63,),  # (43,6,4,3,0); (43,6,5,1,0)
    44: (0x65, 0x69,),  # (44,6,5,2,0); (44,6,5,3,0)
    45: (0x1b, 0x35,),  # (45,4,3,1,0); (45,5,4,2,0)
    46: (0x1c1, 0x20b,),  # (46,8,7,6,0); (46,9,3,1,0)
    47: (0x21, 0x4001,),  # (47,5,0); (47,14,0)
    48: (0x291, 0x341,),  # (48,9,7,4,0); (48,9,8,6,0)
    49: (0x201, 0x1001,),  # (49,9,0); (49,12,0)
    50: (0x1d, 0x4d,),  # (50,4,3,2,0); (50,6,3,2,0)
    51: (0x4b, 0x69,),  # (51,6,3,1,0); (51,6,5,3,0)
    52: (0x9, 0x80001,),  # (52,3,0); (52,19,0)
    53: (0x47, 0x71,),  # (53,6,2,1,0); (53,6,5,4,0)
    54: (0x149, 0x483,),  # (54,8,6,3,0); (54,10,7,1,0)
    55: (0x1000001, 0x80000001,),  # (55,24,0); (55,31,0)
    56: (0x95, 0x10d,),  # (56,7,4,2,0); (56,8,3,2,0)
    57: (0x81, 0x400001,),  # (57,7,0); (57,22,0)
    58: (0x80001, 0x8000000001,),  # (58,19,0); (58,39,0)
    59: (0x95, 0xc5,),  # (59,7,4,2,0); (59,7,6,2,0)
    60: (0x3, 0x801,),  # (60,1,0); (60,11,0)
    61: (0x27, 0x93,),  # (61,5,2,1,0); (61,7,4,1,0)
    62: (0x69, 0x1c1,),  # (62,6,5,3,0); (62,8,7,6,0)
    63: (0x3, 0x21,),  # (63,1,0); (63,5,0)
    64: (0x1b, 0x1d,),  # (64,4,3,1,0); (64,4,3,2,0)
    65: (0x40001, 0x100000001,),  # (65,18,0); (65,32,0)
    66: (0x341, 0x603,),  # (66,9,8,6,0); (66,10,9,1,0)
    67: (0x27, 0xe1,),  # (67,5,2,1,0); (67,7,6,5,0)
    68: (0x201, 0x200000001,),  # (68,9,0); (68,33,0)
    69: (0x65, 0x125,),  # (69,6,5,2,0); (69,8,5,2,0)
    70: (0x2b, 0x885,),  # (70,5,3,1,0); (70,11,7,2,0)
    71: (0x41, 0x201,),  # (71,6,0); (71,9,0)
    72: (0x609, 0x1025,),  # (72,10,9,3,0); (72,12,5,2,0)
    73: (0x2000001, 0x10000001,),  # (73,25,0); (73,28,0)
    74: (0x99, 0x285,),  # (74,7,4,3,0); (74,9,7,2,0)
    75: (0x4b, 0x53,),  # (75,6,3,1,0); (75,6,4,1,0)
    76: (0x35, 0x8d,),  # (76,5,4,2,0); (76,7,3,2,0)
    77: (0x65, 0xe1,),  # (77,6,5,2,0); (77,7,6,5,0)
    78: (0x87, 0x813,),  # (78,7,2,1,0); (78,11,4,1,0)
    79: (0x201, 0x80001,),  # (79,9,0); (79,19,0)
    80: (0x215, 0x905,),  # (80,9,4,2,0); (80,11,8,2,0)
    81: (0x11, 0x10001,),  # (81,4,0); (81,16,0)
    82: (0x251, 0x2061,),  # (82,9,6,4,0); (82,13,6,5,0)
    83: (0x95, 0x225,),  # (83,7,4,2,0); (83,9,5,2,0)
    84: (0x2001, 0x800000000000000001,),  # (84,13,0); (84,71,0)
    85: (0x107, 0x461,),  # (85,8,2,1,0); (85,10,6,5,0)
    86: (0x65, 0x87,),  # (86,6,5,2,0); (86,7,2,1,0)
    87: (0x2001, 0x4000000000000000001,),  # (87,13,0); (87,74,0)
    88: (0xb01, 0x1025,),  # (88,11,9,8,0); (88,12,5,2,0)
    89: (0x4000000001, 0x8000000000001,),  # (89,38,0); (89,51,0)
    90: (0x2d, 0x909,),  # (90,5,3,2,0); (90,11,8,3,0)
    91: (0x123, 0x225,),  # (91,8,5,1,0); (91,9,5,2,0)
    92: (0x65, 0x71,),  # (92,6,5,2,0); (92,6,5,4,0)
    93: (0x5, 0x80000000000000000000001,),  # (93,2,0); (93,91,0)
    94: (0x200001, 0x2000000000000000001,),  # (94,21,0); (94,73,0)
    95: (0x801, 0x20001,),  # (95,11,0); (95,17,0)
    96: (0x641, 0xc21,),  # (96,10,9,6,0); (96,11,10,5,0)
    97: (0x41, 0x1001,),  # (97,6,0); (97,12,0)
    98: (0x801, 0x8000001,),  # (98,11,0); (98,27,0)
    99: (0xb1, 0x423,),  # (99,7,5,4,0); (99,10,5,1,0)
    100: (0x2000000001, 0x8000000000000001,),  # (100,37,0); (100,63,0)
    101: (0xc3, 0x10d,),  # (101,7,6,1,0); (101,8,3,2,0)
    102: (0x69, 0x243,),  # (102,6,5,3,0); (102,9,6,1,0)
    103: (0x201, 0x2001,),  # (103,9,0); (103,13,0)
    104: (0xc03, 0x8015,),  # (104,11,10,1,0); (104,15,4,2,0)
    105: (0x10001, 0x20001,),  # (105,16,0); (105,17,0)
    106: (0x8001, 0x80000000000000000000001,),  # (106,15,0); (106,91,0)
    107: (0x200000000000000140000000001, 0x291,),  # (107,105,44,42,0); (107,9,7,4,0)
    108: (0x80000001, 0x20000000000000000001,),  # (108,31,0); (108,77,0)
    109: (0x35, 0xc3,),  # (109,5,4,2,0); (109,7,6,1,0)
    110: (0x53, 0x40d,),  # (110,6,4,1,0); (110,10,3,2,0)
    111: (0x401, 0x2000000000001,),  # (111,10,0); (111,49,0)
    112: (0x851, 0x1085,),  # (112,11,6,4,0); (112,12,7,2,0)
    113: (0x201, 0x8001,),  # (113,9,0); (113,15,0)
    114: (0x807, 0x1025,),  # (114,11,2,1,0); (114,12,5,2,0)
    115: (0x1a1, 0x1043,),  # (115,8,7,5,0); (115,12,6,1,0)
    116: (0x65, 0xe1,),  # (116,6,5,2,0); (116,7,6,5,0)
    117: (0x27, 0x251,),  # (117,5,2,1,0); (117,9,6,4,0)
    118: (0x200000001, 0x200000000001,),  # (118,33,0); (118,45,0)
    119: (0x101, 0x4000000001,),  # (119,8,0); (119,38,0)
    120: (0x245, 0x609,),  # (120,9,6,2,0); (120,10,9,3,0)
    121: (0x40001, 0x80000000000000000000000001,),  # (121,18,0); (121,103,0)
    122: (0x47, 0x99,),  # (122,6,2,1,0); (122,7,4,3,0)
    123: (0x5, 0x2000000000000000000000000000001,),  # (123,2,0); (123,121,0)
    124: (0x2000000001, 0x8000000000000000000001,),  # (124,37,0); (124,87,0)
    125: (0xe1, 0x119,),  # (125,7,6,5,0); (125,8,4,3,0)
    126: (0x95, 0x20b,),  # (126,7,4,2,0); (126,9,3,1,0)
    127: (0x3, 0x81,),  # (127,1,0); (127,7,0)
    128: (0x87, 0x1821,),  # (128,7,2,1,0); (128,12,11,5,0)
    150: (0x20000000000001, 0x2000000000000000000000001,),  # (150,53,0); (150,97,0)
    168: (0x10241, 0x20091,),  # (168,16,9,6,0); (168,17,7,4,0)
    214: (0x2b, 0x35,),  # (214,5,3,1,0); (214,5,4,2,0)
    256: (0x425, 0x1000b,),  # (256,10,5,2,0); (256,16,3,1,0)
    300: (0x81, 0x2000000000000000001,),  # (300,7,0); (300,73,0)
    512: (0x125, 0x100241,),  # (512,8,5,2,0); (512,20,9,6,0)
    521: (0x100000001, 0x1000000000001,),  # (521,32,0); (521,48,0)
    607: (0x200000000000000000000000001, 0x8000000000000000000000000000000000001,),  # (607,105,0); (607,147,0)
    1024: (0xc00201, 0x2001401,),  # (1024,23,22,9,0); (1024,25,12,10,0)
}
