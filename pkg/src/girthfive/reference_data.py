"""Best-known edge counts for {3,4}-cycle-free graphs, sizes 1..200.

Each row is (n, edges, graphs_found): the highest edge count recorded for a
feasible n-node graph and the number of non-isomorphic graphs attaining it
in the run that produced the table. Values are exact for n <= EXACT_MAX and
search lower bounds beyond that. The sequence dips at a few of the largest
sizes (195 -> 196); rows are kept verbatim rather than smoothed.
"""

from __future__ import annotations

EXACT_MAX = 53

# fmt: off
BEST_KNOWN: tuple[tuple[int, int, int], ...] = (
    (1, 0, 1), (2, 1, 1), (3, 2, 1), (4, 3, 2), (5, 5, 1),
    (6, 6, 2), (7, 8, 1), (8, 10, 1), (9, 12, 1), (10, 15, 1),
    (11, 16, 3), (12, 18, 7), (13, 21, 1), (14, 23, 4), (15, 26, 1),
    (16, 28, 22), (17, 31, 14), (18, 34, 15), (19, 38, 1), (20, 41, 1),
    (21, 44, 2), (22, 47, 3), (23, 50, 7), (24, 54, 1), (25, 57, 6),
    (26, 61, 2), (27, 65, 1), (28, 68, 4), (29, 72, 1), (30, 76, 1),
    (31, 80, 2), (32, 85, 1), (33, 87, 12), (34, 90, 230), (35, 95, 5),
    (36, 99, 34), (37, 104, 6), (38, 109, 2), (39, 114, 1), (40, 120, 1),
    (41, 124, 1), (42, 129, 1), (43, 134, 1), (44, 139, 2), (45, 145, 1),
    (46, 150, 2), (47, 156, 1), (48, 162, 1), (49, 168, 1), (50, 175, 1),
    (51, 176, 7), (52, 178, 102), (53, 181, 402), (54, 185, 5), (55, 189, 5),
    (56, 193, 11), (57, 197, 4), (58, 202, 1), (59, 207, 2), (60, 212, 2),
    (61, 216, 16), (62, 220, 85), (63, 224, 2662), (64, 230, 2), (65, 235, 74),
    (66, 241, 1), (67, 246, 43), (68, 251, 979), (69, 257, 85), (70, 262, 1575),
    (71, 268, 66), (72, 273, 694), (73, 279, 4), (74, 284, 172), (75, 290, 12),
    (76, 295, 1298), (77, 301, 1), (78, 306, 548), (79, 312, 39), (80, 318, 25),
    (81, 324, 11), (82, 329, 673), (83, 335, 22), (84, 340, 375), (85, 346, 9),
    (86, 352, 4), (87, 357, 584), (88, 363, 288), (89, 369, 50), (90, 375, 8),
    (91, 381, 2), (92, 387, 10), (93, 393, 1), (94, 398, 1014), (95, 404, 605),
    (96, 411, 1), (97, 417, 4), (98, 422, 819), (99, 428, 161), (100, 434, 49),
    (101, 440, 15), (102, 446, 3), (103, 452, 5), (104, 458, 8), (105, 464, 10),
    (106, 470, 6), (107, 476, 9), (108, 482, 7), (109, 488, 14), (110, 494, 100),
    (111, 500, 119), (112, 506, 105), (113, 513, 4), (114, 519, 30), (115, 526, 1),
    (116, 532, 3), (117, 538, 34), (118, 544, 27), (119, 551, 5), (120, 557, 33),
    (121, 564, 1), (122, 570, 22), (123, 577, 1), (124, 583, 18), (125, 589, 67),
    (126, 596, 3), (127, 603, 1), (128, 609, 3), (129, 616, 34), (130, 623, 15),
    (131, 630, 1), (132, 636, 41), (133, 643, 6), (134, 649, 40), (135, 656, 3),
    (136, 663, 1), (137, 669, 54), (138, 676, 32), (139, 683, 17), (140, 690, 18),
    (141, 697, 9), (142, 704, 7), (143, 711, 4), (144, 718, 3), (145, 725, 3),
    (146, 732, 12), (147, 739, 4), (148, 746, 2), (149, 752, 9), (150, 759, 7),
    (151, 766, 8), (152, 773, 5), (153, 780, 2), (154, 788, 3), (155, 795, 14),
    (156, 802, 1), (157, 809, 10), (158, 816, 18), (159, 823, 27), (160, 830, 12),
    (161, 838, 2), (162, 845, 16), (163, 852, 24), (164, 860, 7), (165, 867, 5),
    (166, 874, 4), (167, 881, 20), (168, 888, 32), (169, 896, 3), (170, 904, 4),
    (171, 911, 19), (172, 919, 1), (173, 926, 7), (174, 933, 21), (175, 940, 4),
    (176, 947, 4), (177, 954, 46), (178, 962, 4), (179, 970, 1), (180, 977, 2),
    (181, 984, 12), (182, 992, 6), (183, 1000, 8), (184, 1008, 6), (185, 1015, 1),
    (186, 1022, 2), (187, 1024, 13), (188, 1034, 1), (189, 1044, 1), (190, 1050, 1),
    (191, 1056, 1), (192, 1065, 1), (193, 1069, 4), (194, 1070, 1), (195, 1082, 1),
    (196, 1069, 5), (197, 1079, 1), (198, 1086, 7), (199, 1094, 6), (200, 1096, 2),
)
# fmt: on
