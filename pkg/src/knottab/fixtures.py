"""Reference classification table for positions 1..128.

This is the golden data the builder is checked against: position, assigned
knot (canonical notation) and, for positions 33..128, the repeat knots that
were replaced at that position (comma-joined, in recorded order).  Position 2
is reserved and has no row.

Note the quirk at 121: the reference prints ``3_1*3_1*3_1*7_3`` even though
the surrounding construction pattern would give ``3_1*3_1*7_3``; the printed
entry is kept verbatim and the builder reproduces it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .knots import KnotExpr, parse

FIXTURE_TSV = """\
position\tknot\treplaced
1\t3_1\t
3\t4_1\t
4\t3_1*3_1\t
5\t5_1\t
6\t3_1*4_1\t
7\t5_2\t
8\t3_1*3_1*3_1\t
9\t3_1x3_1\t
10\t3_1*5_1\t
11\t6_1\t
12\t3_1*5_2\t
13\t6_2\t
14\t4_1*4_1\t
15\t3_1*3_1*4_1\t
16\t3_1*3_1*3_1*3_1\t
17\t6_3\t
18\t3_1x4_1\t
19\t7_1\t
20\t4_1*5_1\t
21\t3_1*4_1*4_1\t
22\t4_1*5_2\t
23\t7_2\t
24\t3_1*(3_1x3_1)\t
25\t3_1*3_1*5_1\t
26\t3_1*6_1\t
27\t3_1*3_1*5_2\t
28\t3_1*6_2\t
29\t7_3\t
30\t3_1*3_1*3_1*4_1\t
31\t7_4\t
32\t3_1*3_1*3_1*3_1*3_1\t
33\t3_1*6_3\t
34\t3_1*(3_1x4_1)\t
35\t3_1*7_1\t
36\t3_1x5_1\t3_1*4_1*5_1
37\t7_5\t3_1*3_1*4_1*4_1
38\t3_1x5_2\t3_1*4_1*5_2
39\t3_1*7_2\t
40\t3_1*3_1*(3_1x3_1)\t
41\t7_6\t3_1*3_1*3_1*5_1
42\t5_1*5_1\t
43\t7_7\t3_1*4_1*5_1
44\t5_1*5_2\t
45\t4_1x4_1\t3_1*3_1*3_1*5_1,3_1*4_1*5_2
46\t5_2*5_2\t
47\t8_1\t3_1*3_1*3_1*5_2,4_1*(3_1x3_1)
48\t3_1*4_1*5_1\t
49\t4_1*6_1\t
50\t3_1*4_1*5_2\t
51\t4_1*6_2\t
52\t4_1*4_1*4_1\t
53\t8_2\t3_1*3_1*4_1*4_1
54\t3_1*3_1*3_1*5_1\t
55\t3_1*3_1*6_1\t
56\t3_1*3_1*3_1*5_2\t
57\t3_1*3_1*6_2\t
58\t3_1*7_3\t
59\t8_3\t3_1*3_1*3_1*3_1*4_1
60\t3_1*7_4\t
61\t8_4\t3_1*3_1*3_1*3_1*3_1*3_1
62\t3_1*3_1*4_1*4_1\t
63\t3_1*3_1*3_1*3_1*4_1\t
64\t3_1*3_1*3_1*3_1*3_1*3_1\t
65\t3_1*3_1*6_3\t
66\t3_1x3_1x3_1\t3_1*3_1*(3_1x4_1)
67\t8_5\t3_1*3_1*7_1
68\t4_1x5_1\t3_1*3_1*4_1*5_1
69\t4_1x(3_1*4_1)\t3_1*3_1*3_1*4_1*4_1
70\t4_1x5_2\t3_1*3_1*4_1*5_2
71\t8_6\t3_1*3_1*7_2
72\t4_1*6_3\t
73\t8_7\t4_1*(3_1x4_1)
74\t5_1*(3_1x3_1)\t
75\t3_1*5_1*5_1\t
76\t5_1*6_1\t
77\t3_1*5_1*5_2\t
78\t5_1*6_2\t
79\t8_8\t4_1*4_1*5_1,3_1*5_1*5_2
80\t5_2*6_1\t
81\t3_1*5_2*5_2\t
82\t5_2*6_2\t
83\t8_9\t4_1*4_1*5_2
84\t4_1*7_1\t
85\t4_1*4_1*5_1\t
86\t3_1*4_1*4_1*4_1\t
87\t4_1*4_1*5_2\t
88\t4_1*7_2\t
89\t8_10\t3_1*4_1*(3_1x3_1)
90\t3_1*3_1*4_1*5_1\t
91\t3_1*4_1*6_1\t
92\t3_1*3_1*4_1*5_2\t
93\t3_1*4_1*6_2\t
94\t4_1*7_3\t
95\t3_1*3_1*3_1*4_1*4_1\t
96\t4_1*7_4\t
97\t8_11\t3_1*3_1*3_1*3_1*3_1*4_1
98\t4_1*5_1*5_1\t3_1*3_1*6_3
99\t3_1*3_1*(3_1x4_1)\t
100\t3_1*3_1*7_1\t
101\t8_12\t3_1*(3_1x5_1)
102\t3_1*7_5\t
103\t8_13\t3_1*(3_1x5_2)
104\t3_1*3_1*7_2\t
105\t3_1*3_1*3_1*(3_1x3_1)\t
106\t3_1*7_6\t
107\t8_14\t3_1*5_1*5_1
108\t3_1*7_7\t
109\t8_15\t3_1*5_1*5_2
110\t3_1x6_1\t3_1*5_1*5_2
111\t3_1x(3_1*5_2)\t3_1*(4_1x4_1)
112\t3_1x6_2\t3_1*5_2*5_2
113\t8_16\t3_1*5_2*5_2
114\t3_1*8_1\t
115\t3_1x6_3\t3_1*3_1*4_1*5_1,3_1*4_1*4_1*4_1
116\t3_1*8_2\t
117\t3_1*3_1*3_1*3_1*5_1\t
118\t3_1*3_1*3_1*6_1\t
119\t3_1*3_1*3_1*3_1*5_2\t
120\t3_1*3_1*3_1*6_2\t
121\t3_1*3_1*3_1*7_3\t
122\t3_1*8_3\t
123\t3_1*3_1*7_4\t
124\t3_1*8_4\t
125\t3_1x3_1x4_1\t3_1*3_1*3_1*4_1*4_1
126\t3_1*3_1*3_1*3_1*3_1*4_1\t
127\t8_17\t3_1*3_1*3_1*3_1*3_1*3_1*3_1
128\t3_1*3_1*3_1*3_1*3_1*3_1*3_1\t
"""

# Replaced-column data is recorded only from position 33 on.
REPLACED_RECORDED_FROM = 33


@dataclass(frozen=True)
class FixtureRow:
    position: int
    knot: KnotExpr
    replaced: tuple[KnotExpr, ...]


def load_fixture_rows() -> dict[int, FixtureRow]:
    rows: dict[int, FixtureRow] = {}
    lines = FIXTURE_TSV.splitlines()
    for line in lines[1:]:
        pos_text, knot_text, replaced_text = line.split("\t")
        position = int(pos_text)
        replaced = tuple(
            parse(part) for part in replaced_text.split(",") if part
        )
        rows[position] = FixtureRow(position, parse(knot_text), replaced)
    return rows
