"""Regenerates the bundled 100-pair De-En mini-corpus used by the smoke tests.

Each template lists German and English token patterns plus the alignment in
terms of slot/word positions, so the Pharaoh links are exact by construction.
Also writes NP span annotations for the source side.
"""
import random

SUBJ = [("sie", "she"), ("er", "he"), ("die Lehrerin", "the teacher"),
        ("mein Bruder", "my brother"), ("der Arzt", "the doctor"), ("das Kind", "the child")]
OBJ = [("Rom", "Rome"), ("Berlin", "Berlin"), ("das Museum", "the museum"),
       ("den Markt", "the market"), ("die Schule", "the school"), ("den Park", "the park")]
ADV = [("gestern", "yesterday"), ("oft", "often"), ("heute", "today")]
ADJ = [("kleine", "small"), ("alte", "old"), ("neue", "new")]
NOUN = [("Haus", "house"), ("Auto", "car"), ("Buch", "book")]


def phrase(words):
    return words.split()


def one_to_one(src_off, tgt_off, n):
    return [(src_off + i, tgt_off + i) for i in range(n)]


def visited(rng):
    (sd, se), (od, oe) = rng.choice(SUBJ), rng.choice(OBJ)
    sd, se, od, oe = map(phrase, (sd, se, od, oe))
    src = sd + ["hat"] + od + ["besucht"]
    tgt = se + ["visited"] + oe
    links = one_to_one(0, 0, len(sd)) if len(sd) == len(se) else [(i, j) for i in range(len(sd)) for j in range(len(se))]
    h = len(sd)
    links += [(h, h), (h + 1 + len(od), h)]
    links += [(h + 1 + i, h + 1 + i) for i in range(len(od))]
    nps = [(0, len(sd)), (h + 1, h + 1 + len(od))]
    return src, tgt, links, nps


def sees(rng):
    (sd, se), (ad, ae), (nd, ne), (vd, ve) = rng.choice(SUBJ), rng.choice(ADJ), rng.choice(NOUN), rng.choice(ADV)
    sd, se = phrase(sd), phrase(se)
    src = sd + ["sieht", "das", ad, nd, vd]
    tgt = se + ["sees", "the", ae, ne, ve]
    links = [(i, i) for i in range(len(sd))] if len(sd) == len(se) else [(i, j) for i in range(len(sd)) for j in range(len(se))]
    h = len(sd)
    links += [(h + k, h + k) for k in range(5)]
    nps = [(0, len(sd)), (h + 1, h + 4)]
    return src, tgt, links, nps


def goes(rng):
    (sd, se), (od, oe), (vd, ve) = rng.choice(SUBJ), rng.choice(OBJ), rng.choice(ADV)
    sd, se, od, oe = map(phrase, (sd, se, od, oe))
    # "X geht V in O ." / "X goes to O V ."  (adverb reordered)
    src = sd + ["geht", vd, "in"] + od + ["."]
    tgt = se + ["goes", "to"] + oe + [ve, "."]
    links = [(i, i) for i in range(len(sd))] if len(sd) == len(se) else [(i, j) for i in range(len(sd)) for j in range(len(se))]
    h, g = len(sd), len(se)
    links += [(h, g), (h + 2, g + 1)]
    links += [(h + 3 + i, g + 2 + i) for i in range(len(od))]
    links += [(h + 1, g + 2 + len(oe)), (h + 3 + len(od), g + 3 + len(oe))]
    nps = [(0, len(sd)), (h + 3, h + 3 + len(od))]
    return src, tgt, links, nps


def main():
    rng = random.Random(20231)
    src_lines, tgt_lines, align_lines, ann_lines = [], [], [], []
    templates = [visited, sees, goes]
    for pair_id in range(100):
        src, tgt, links, nps = rng.choice(templates)(rng)
        for s, t in links:
            assert s < len(src) and t < len(tgt)
        src_lines.append(" ".join(src))
        tgt_lines.append(" ".join(tgt))
        align_lines.append(" ".join(f"{s}-{t}" for s, t in sorted(set(links))))
        ann_lines += [f"{pair_id}\tNP\t{a}\t{b}" for a, b in nps]
    for name, lines in (("mini.de", src_lines), ("mini.en", tgt_lines),
                        ("mini.align", align_lines), ("mini.np.tsv", ann_lines)):
        with open(name, "w", encoding="utf-8", newline="\n") as f:
            f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
