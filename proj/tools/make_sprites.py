#!/usr/bin/env python3
# Copyright 2026 The Hidden Agenda Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates assets/sprites.ppm from the character art below.

Each tile is 8x8. Characters map to colors through assets/palette.txt.
'@' is the avatar body key (replaced by the seat color at render time) and
'-' is the transparent key used by overlays.
"""

import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent

TILES = {
    "void": ["kkkkkkkk"] * 8,
    "floor": [
        "ffffffff",
        "ffffffff",
        "ffffffff",
        "fffgffff",
        "ffffffff",
        "ffffffff",
        "ffffffff",
        "ffffffff",
    ],
    "wall": [
        "wwwwwwww",
        "WWWwWWWw",
        "WWWwWWWw",
        "wwwwwwww",
        "wWWWwWWW",
        "wWWWwWWW",
        "wwwwwwww",
        "WWWwWWWw",
    ],
    "pad_full": [
        "Cfffffff",
        "fppppppf",
        "fpCCCCpf",
        "fpCccCpf",
        "fpCccCpf",
        "fpCCCCpf",
        "fppppppf",
        "ffffffff",
    ],
    "pad_empty": [
        "pfffffff",
        "fppppppf",
        "fpffffpf",
        "fpffffpf",
        "fpffffpf",
        "fpffffpf",
        "fppppppf",
        "ffffffff",
    ],
    "grate": [
        "rRRRRRRR",
        "RrRrRrRr",
        "RRRRRRRR",
        "RrRrRrRr",
        "RRRRRRRR",
        "RrRrRrRr",
        "RRRRRRRR",
        "RrRrRrRr",
    ],
    "deliberation": [
        "dddddddd",
        "dDdddDdd",
        "dddddddd",
        "dddDdddD",
        "dddddddd",
        "dDdddDdd",
        "dddddddd",
        "dddDdddD",
    ],
    "voting_slot": [
        "vddddddv",
        "dvvvvvvd",
        "dvddddvd",
        "dvddddvd",
        "dvddddvd",
        "dvddddvd",
        "dvvvvvvd",
        "vddddddv",
    ],
    "jail": [
        "jbjbjbjb",
        "jbjbjbjb",
        "jbjbjbjb",
        "jbjbjbjb",
        "jbjbjbjb",
        "jbjbjbjb",
        "jbjbjbjb",
        "jbjbjbjb",
    ],
    # Facing up in view coordinates; the renderer rotates it.
    "avatar": [
        "--------",
        "-@@mm@@-",
        "-@@@@@@-",
        "-@@@@@@-",
        "-@@@@@@-",
        "-@@@@@@-",
        "-@@--@@-",
        "--------",
    ],
    "frozen": [
        "--------",
        "--------",
        "--i--i--",
        "--------",
        "--------",
        "--i--i--",
        "--------",
        "--------",
    ],
    "beam": [
        "--y--y--",
        "--------",
        "y------y",
        "--------",
        "--------",
        "y------y",
        "--------",
        "--y--y--",
    ],
}

ORDER = ["void", "floor", "wall", "pad_full", "pad_empty", "grate",
         "deliberation", "voting_slot", "jail", "avatar", "frozen", "beam"]


def load_palette():
    table = {}
    for line in (ROOT / "assets" / "palette.txt").read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, _name, r, g, b = line.split()
        table[key] = (int(r), int(g), int(b))
    return table


def main():
    palette = load_palette()
    width = 8 * len(ORDER)
    rows = []
    for y in range(8):
        row = []
        for name in ORDER:
            for ch in TILES[name][y]:
                row.append(palette[ch])
        rows.append(row)
    out = ["P3", "# hidden agenda sprite sheet: " + " ".join(ORDER),
           f"{width} 8", "255"]
    for row in rows:
        out.append(" ".join(f"{r} {g} {b}" for r, g, b in row))
    (ROOT / "assets" / "sprites.ppm").write_text("\n".join(out) + "\n")


if __name__ == "__main__":
    main()
