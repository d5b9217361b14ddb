"""Published per-subject results of the original duty-cycle study.

Each entry maps ``(subject, frequency_hz)`` to one ``(mean_rank, average,
sd)`` triple per duty cycle in :data:`DUTIES_PCT` order. Mean ranks come
from per-subject Kruskal-Wallis tests over 5 x 150 maximal FFT amplitudes;
averages and SDs are in the recording device's raw units.
"""

FREQUENCIES_HZ = (7, 8, 9, 10)
DUTIES_PCT = (50, 80, 85, 90, 95)
SUBJECTS = tuple(range(1, 11))
SEGMENTS_PER_CONDITION = 150

#: Kruskal-Wallis statistics reported for the pooled 5-group tests.
POOLED_H = {7: 4.6e3, 8: 4.2e3, 9: 5.1e3, 10: 5.3e3}

PUBLISHED = {
    (1, 7): ((387.1, 537.6, 4.7), (387.3, 538.1, 3.5), (649.2, 562.8, 8.6), (377.4, 535.1, 5.1), (76.5, 417.4, 8.7)),
    (1, 8): ((366.8, 581.5, 8.5), (594.2, 591.9, 6.3), (597.1, 651.1, 0.8), (236.3, 531.6, 6.9), (83.1, 490.2, 9.4)),
    (1, 9): ((466.5, 531.6, 2.6), (545.5, 535.9, 9.4), (558.6, 536.5, 0.3), (188.9, 490.1, 8.4), (117.8, 484.4, 7.5)),
    (1, 10): ((404.5, 503.8, 7.1), (474.4, 507.1, 2.2), (646.9, 533.2, 2.2), (218.9, 482.5, 9.3), (132.6, 487.8, 5.6)),
    (2, 7): ((330.3, 532.1, 3.6), (554.1, 557.7, 8.6), (598.2, 561.9, 7.6), (310.1, 536.2, 3.1), (85.0, 486.2, 3.9)),
    (2, 8): ((416.5, 581.4, 9.1), (489.8, 591.3, 8.8), (659.9, 632.1, 9.9), (209.5, 538.1, 7.2), (101.6, 519.2, 1.4)),
    (2, 9): ((411.6, 525.9, 8.1), (577.2, 535.6, 0.1), (581.1, 534.0, 5.9), (193.1, 494.3, 9.9), (114.3, 489.0, 8.6)),
    (2, 10): ((514.2, 535.8, 4.3), (516.5, 531.5, 7.5), (534.4, 538.9, 4.8), (235.7, 514.0, 8.6), (76.5, 443.8, 6.3)),
    (3, 7): ((405.6, 528.3, 4.6), (485.5, 529.2, 9.9), (665.2, 558.7, 8.1), (244.5, 509.4, 9.4), (76.7, 443.5, 2.4)),
    (3, 8): ((376.1, 537.6, 2.4), (533.6, 576.2, 7.6), (636.7, 593.7, 8.7), (155.1, 489.9, 7.1), (155.9, 489.7, 6.5)),
    (3, 9): ((431.7, 527.4, 1.1), (560.6, 531.1, 5.1), (574.3, 536.1, 0.7), (191.7, 492.2, 0.2), (119.0, 488.8, 8.6)),
    (3, 10): ((340.7, 503.4, 7.4), (492.1, 514.9, 5.8), (670.9, 535.7, 5.3), (196.1, 493.2, 7.5), (177.6, 489.6, 1.4)),
    (4, 7): ((463.5, 535.1, 4.4), (475.7, 533.6, 3.8), (621.5, 547.8, 7.9), (193.2, 496.1, 3.7), (123.3, 484.9, 8.1)),
    (4, 8): ((446.4, 536.3, 8.3), (437.1, 534.3, 1.7), (672.9, 574.7, 8.3), (184.2, 510.1, 5.2), (136.7, 505.7, 1.8)),
    (4, 9): ((441.1, 582.1, 0.5), (555.1, 535.1, 5.9), (567.1, 537.8, 7.1), (196.7, 491.6, 0.1), (117.2, 482.4, 1.2)),
    (4, 10): ((371.2, 507.7, 0.2), (516.1, 520.1, 7.9), (665.6, 536.4, 6.1), (195.6, 492.7, 7.3), (123.8, 487.8, 5.6)),
    (5, 7): ((377.10, 528.9, 7.1), (436.3, 535.7, 2.1), (656.1, 554.8, 6.5), (328.4, 526.7, 11.1), (79.2, 487.9, 9.1)),
    (5, 8): ((416.63, 537.9, 4.9), (416.7, 538.4, 0.8), (670.9, 591.9, 8.9), (293.8, 525.1, 6.1), (79.3, 491.6, 0.4)),
    (5, 9): ((433.79, 526.7, 9.3), (561.4, 535.5, 8.3), (572.2, 536.4, 0.3), (180.4, 494.6, 8.7), (129.6, 490.9, 0.9)),
    (5, 10): ((401.51, 510.2, 4.2), (530.6, 520.0, 7.9), (636.1, 536.2, 4.7), (155.8, 442.2, 6.3), (150.4, 443.4, 6.5)),
    (6, 7): ((346.1, 535.7, 2.1), (455.6, 536.3, 8.2), (667.9, 559.9, 6.3), (329.9, 534.1, 3.9), (77.9, 536.2, 9.9)),
    (6, 8): ((484.1, 526.7, 6.1), (459.3, 525.6, 7.8), (561.8, 535.1, 9.2), (211.9, 501.2, 7.5), (160.3, 495.1, 5.8)),
    (6, 9): ((379.1, 505.8, 9.4), (505.9, 510.9, 5.7), (669.9, 533.1, 5.2), (240.4, 482.4, 9.5), (82.2, 465.6, 8.2)),
    (6, 10): ((411.3, 514.1, 7.6), (491.8, 520.3, 5.9), (667.1, 536.1, 6.1), (182.8, 492.1, 8.5), (124.3, 487.9, 7.4)),
    (7, 7): ((379.9, 535.6, 5.7), (391.1, 535.8, 7.1), (650.8, 561.3, 8.2), (368.7, 534.2, 9.2), (86.9, 504.1, 9.3)),
    (7, 8): ((353.7, 509.9, 7.5), (519.3, 525.6, 6.3), (636.4, 537.1, 0.9), (495.6, 498.8, 9.3), (156.1, 489.8, 1.3)),
    (7, 9): ((355.7, 494.2, 0.8), (526.2, 537.1, 6.1), (674.5, 580.2, 3.2), (194.1, 477.7, 0.4), (126.9, 472.1, 1.3)),
    (7, 10): ((345.9, 509.1, 3.6), (507.1, 520.1, 7.9), (658.7, 535.5, 7.9), (282.6, 504.1, 7.6), (83.1, 473.4, 2.6)),
    (8, 7): ((404.6, 535.2, 1.2), (435.5, 539.4, 7.6), (638.9, 559.2, 6.2), (303.3, 526.9, 33.2), (95.1, 495.8, 9.5)),
    (8, 8): ((248.9, 561.2, 6.7), (495.9, 592.8, 6.2), (645.1, 616.8, 9.6), (397.8, 546.3, 7.2), (89.7, 524.6, 1.4)),
    (8, 9): ((414.1, 511.8, 9.1), (490.4, 516.3, 5.7), (670.3, 532.1, 4.9), (175.5, 452.3, 7.9), (127.2, 448.3, 7.9)),
    (8, 10): ((368.8, 508.0, 3.2), (594.8, 535.5, 7.9), (601.5, 535.7, 5.3), (236.2, 492.7, 7.3), (76.1, 463.1, 6.8)),
    (9, 7): ((369.1, 530.4, 6.8), (424.3, 538.1, 4.8), (648.8, 558.2, 8.1), (332.9, 529.8, 4.3), (102.3, 508.4, 3.7)),
    (9, 8): ((380.1, 538.3, 8.8), (531.4, 579.4, 8.2), (659.7, 611.3, 9.5), (175.7, 452.7, 8.5), (130.4, 482.5, 7.5)),
    (9, 9): ((411.3, 488.4, 9.2), (490.7, 495.1, 0.7), (674.4, 532.0, 5.2), (215.3, 410.3, 8.2), (84.7, 396.1, 7.1)),
    (9, 10): ((372.6, 501.2, 6.9), (592.7, 534.6, 7.8), (607.4, 531.2, 6.2), (182.4, 454.3, 9.8), (122.3, 447.3, 6.6)),
    (10, 7): ((388.5, 532.4, 9.8), (426.1, 534.8, 1.2), (659.1, 559.8, 7.8), (316.2, 525.1, 6.5), (87.4, 498.2, 1.2)),
    (10, 8): ((421.8, 582.5, 8.5), (482.1, 594.8, 7.7), (667.3, 651.1, 0.8), (229.6, 528.1, 5.1), (76.6, 489.2, 9.1)),
    (10, 9): ((242.9, 486.4, 1.5), (531.3, 524.3, 5.8), (658.7, 531.1, 5.6), (368.1, 500.8, 12.2), (76.3, 439.4, 7.7)),
    (10, 10): ((418.1, 484.7, 6.8), (459.6, 490.6, 1.4), (671.7, 534.6, 6.3), (249.1, 469.5, 6.9), (78.9, 430.1, 8.7)),
}
