#!/usr/bin/env python3
"""Builds the toy corpus used by the golden test.

Writes synthetic.txt (every analysis of every token) and synthetic.gold
(the intended analysis only). Output is deterministic for a given seed.
"""

import argparse
import random
from pathlib import Path

# surface -> analyses; the template picks the gold one by index
LEX = {
    ".": ["[[CAT=PUNCT][ROOT=.]]"],
    "senin": ["[[CAT=PRON][ROOT=sen][AGR=2SG][POSS=NONE][CASE=GEN]]"],
    "onun": [
        "[[CAT=PRON][ROOT=o][AGR=3SG][POSS=NONE][CASE=GEN]]",
        "[[CAT=NUM][ROOT=on][AGR=3SG][POSS=NONE][CASE=GEN]]",
    ],
    "benim": [
        "[[CAT=PRON][ROOT=ben][AGR=1SG][POSS=NONE][CASE=GEN]]",
        "[[CAT=PRON][ROOT=ben][AGR=1SG][POSS=NONE][CASE=NOM][CONV=VERB=NONE][TAM2=PRES][AGR=1SG]]",
    ],
    "evin": [
        "[[CAT=NOUN][ROOT=ev][AGR=3SG][POSS=NONE][CASE=GEN]]",
        "[[CAT=NOUN][ROOT=ev][AGR=3SG][POSS=2SG][CASE=NOM]]",
    ],
    "adamIn": [
        "[[CAT=NOUN][ROOT=adam][AGR=3SG][POSS=NONE][CASE=GEN]]",
        "[[CAT=NOUN][ROOT=adam][AGR=3SG][POSS=2SG][CASE=NOM]]",
    ],
    "kitabIn": [
        "[[CAT=NOUN][ROOT=kitap][AGR=3SG][POSS=NONE][CASE=GEN]]",
        "[[CAT=NOUN][ROOT=kitap][AGR=3SG][POSS=2SG][CASE=NOM]]",
    ],
    "evi": [
        "[[CAT=NOUN][ROOT=ev][AGR=3SG][POSS=NONE][CASE=ACC]]",
        "[[CAT=NOUN][ROOT=ev][AGR=3SG][POSS=3SG][CASE=NOM]]",
    ],
    "kitabI": [
        "[[CAT=NOUN][ROOT=kitap][AGR=3SG][POSS=NONE][CASE=ACC]]",
        "[[CAT=NOUN][ROOT=kitap][AGR=3SG][POSS=3SG][CASE=NOM]]",
    ],
    "kalemi": [
        "[[CAT=NOUN][ROOT=kalem][AGR=3SG][POSS=NONE][CASE=ACC]]",
        "[[CAT=NOUN][ROOT=kalem][AGR=3SG][POSS=3SG][CASE=NOM]]",
    ],
    "ev": ["[[CAT=NOUN][ROOT=ev][AGR=3SG][POSS=NONE][CASE=NOM]]"],
    "kitap": ["[[CAT=NOUN][ROOT=kitap][AGR=3SG][POSS=NONE][CASE=NOM]]"],
    "adam": ["[[CAT=NOUN][ROOT=adam][AGR=3SG][POSS=NONE][CASE=NOM]]"],
    "evden": ["[[CAT=NOUN][ROOT=ev][AGR=3SG][POSS=NONE][CASE=ABL]]"],
    "okuldan": ["[[CAT=NOUN][ROOT=okul][AGR=3SG][POSS=NONE][CASE=ABL]]"],
    "taS": [
        "[[CAT=ADJ][ROOT=taS]]",
        "[[CAT=NOUN][ROOT=taS][AGR=3SG][POSS=NONE][CASE=NOM]]",
        "[[CAT=VERB][ROOT=taS][SENSE=POS][TAM1=IMP][AGR=2SG]]",
    ],
    "koyun": [
        "[[CAT=ADJ][ROOT=koyu][CONV=NOUN=NONE][AGR=3SG][POSS=2SG][CASE=NOM]]",
        "[[CAT=NOUN][ROOT=koyun][AGR=3SG][POSS=NONE][CASE=NOM]]",
        "[[CAT=NOUN][ROOT=koy][AGR=3SG][POSS=NONE][CASE=GEN]]",
        "[[CAT=NOUN][ROOT=koy][AGR=3SG][POSS=2SG][CASE=NOM]]",
        "[[CAT=VERB][ROOT=koy][SENSE=POS][TAM1=IMP][AGR=2PL]]",
    ],
    "yapmadan": [
        "[[CAT=VERB][ROOT=yap][SENSE=POS][CONV=ADVERB=MADAN]]",
        "[[CAT=VERB][ROOT=yap][SENSE=POS][CONV=NOUN=MA][TYPE=INFINITIVE][AGR=3SG][POSS=NONE][CASE=ABL]]",
    ],
    "okumadan": [
        "[[CAT=VERB][ROOT=oku][SENSE=POS][CONV=ADVERB=MADAN]]",
        "[[CAT=VERB][ROOT=oku][SENSE=POS][CONV=NOUN=MA][TYPE=INFINITIVE][AGR=3SG][POSS=NONE][CASE=ABL]]",
    ],
    "uygulama": [
        "[[CAT=NOUN][ROOT=uygulama][AGR=3SG][POSS=NONE][CASE=NOM]]",
        "[[CAT=VERB][ROOT=uygula][SENSE=POS][CONV=NOUN=MA][TYPE=INFINITIVE][AGR=3SG][POSS=NONE][CASE=NOM]]",
        "[[CAT=VERB][ROOT=uygula][SENSE=NEG][TAM1=IMP][AGR=2SG]]",
    ],
    "sonra": [
        "[[CAT=POSTP][ROOT=sonra][SUBCAT=ABL]]",
        "[[CAT=ADVERB][ROOT=sonra]]",
    ],
    "Once": [
        "[[CAT=POSTP][ROOT=Once][SUBCAT=ABL]]",
        "[[CAT=ADVERB][ROOT=Once]]",
        "[[CAT=NOUN][ROOT=Once][AGR=3SG][POSS=NONE][CASE=NOM]]",
    ],
    "bu": [
        "[[CAT=DET][ROOT=bu]]",
        "[[CAT=PRON][ROOT=bu][AGR=3SG][POSS=NONE][CASE=NOM]]",
    ],
    "bir": [
        "[[CAT=DET][ROOT=bir]]",
        "[[CAT=NUM][ROOT=bir]]",
        "[[CAT=ADVERB][ROOT=bir]]",
    ],
    "gUzel": [
        "[[CAT=ADJ][ROOT=gUzel]]",
        "[[CAT=ADVERB][ROOT=gUzel]]",
    ],
    "Cok": [
        "[[CAT=ADVERB][ROOT=Cok]]",
        "[[CAT=ADJ][ROOT=Cok]]",
    ],
    "yeni": [
        "[[CAT=ADJ][ROOT=yeni]]",
        "[[CAT=ADVERB][ROOT=yeni]]",
    ],
    "bUyUk": ["[[CAT=ADJ][ROOT=bUyUk]]"],
    "yazI": [
        "[[CAT=NOUN][ROOT=yazI][AGR=3SG][POSS=NONE][CASE=NOM]]",
        "[[CAT=NOUN][ROOT=yaz][AGR=3SG][POSS=NONE][CASE=ACC]]",
    ],
    "yUz": [
        "[[CAT=NUM][ROOT=yUz]]",
        "[[CAT=NOUN][ROOT=yUz][AGR=3SG][POSS=NONE][CASE=NOM]]",
        "[[CAT=VERB][ROOT=yUz][SENSE=POS][TAM1=IMP][AGR=2SG]]",
    ],
    "at": [
        "[[CAT=NOUN][ROOT=at][AGR=3SG][POSS=NONE][CASE=NOM]]",
        "[[CAT=VERB][ROOT=at][SENSE=POS][TAM1=IMP][AGR=2SG]]",
    ],
    "geldi": ["[[CAT=VERB][ROOT=gel][SENSE=POS][TAM1=PAST][AGR=3SG]]"],
    "gitti": ["[[CAT=VERB][ROOT=git][SENSE=POS][TAM1=PAST][AGR=3SG]]"],
    "okudu": ["[[CAT=VERB][ROOT=oku][SENSE=POS][TAM1=PAST][AGR=3SG]]"],
    "aldI": ["[[CAT=VERB][ROOT=al][SENSE=POS][TAM1=PAST][AGR=3SG]]"],
    "gOrdU": ["[[CAT=VERB][ROOT=gOr][SENSE=POS][TAM1=PAST][AGR=3SG]]"],
    "bekledi": ["[[CAT=VERB][ROOT=bekle][SENSE=POS][TAM1=PAST][AGR=3SG]]"],
}

# Slot classes: (surface, gold index) choices.
CLASSES = {
    "GEN_NOUN": [("evin", 0), ("adamIn", 0), ("kitabIn", 0)],
    "POSS2_NOUN": [("evin", 1), ("adamIn", 1), ("kitabIn", 1)],
    "POSS3_NOUN": [("evi", 1), ("kitabI", 1), ("kalemi", 1)],
    "ACC_NOUN": [("evi", 0), ("kitabI", 0), ("kalemi", 0)],
    "NOM_NOUN": [("ev", 0), ("kitap", 0), ("adam", 0)],
    "ABL_NOUN": [("evden", 0), ("okuldan", 0)],
    "PAST": [("geldi", 0), ("gitti", 0), ("okudu", 0), ("aldI", 0), ("gOrdU", 0), ("bekledi", 0)],
    "TRANS": [("okudu", 0), ("aldI", 0), ("gOrdU", 0), ("bekledi", 0)],
    "ADJ": [("gUzel", 0), ("yeni", 0), ("bUyUk", 0)],
    "POSTP": [("sonra", 0), ("Once", 0)],
    "MADAN": [("yapmadan", 1), ("okumadan", 1)],
}

# Sentence shapes; a plain string is a literal (surface, index 0) unless
# given as "surface/index".
TEMPLATES = [
    ["senin", "POSS2_NOUN", "ADJ", "."],
    ["onun/0", "POSS3_NOUN", "ADJ", "."],
    ["GEN_NOUN", "POSS3_NOUN", "ADJ", "."],
    ["benim/0", "POSS3_NOUN", "bUyUk", "."],
    ["bu/0", "ADJ", "ACC_NOUN", "TRANS", "."],
    ["ABL_NOUN", "POSTP", "PAST", "."],
    ["MADAN", "POSTP", "PAST", "."],
    ["yapmadan/0", "PAST", "."],
    ["taS/0", "NOM_NOUN", "PAST", "."],
    ["ABL_NOUN", "taS/1", "aldI", "."],
    ["Cok/0", "gUzel/0", "bir/0", "NOM_NOUN", "PAST", "."],
    ["bir/0", "koyun/1", "geldi", "."],
    ["koyun/2", "POSS3_NOUN", "bUyUk", "."],
    ["bu/0", "uygulama/0", "yeni/0", "."],
    ["uygulama/2", "."],
    ["yUz/0", "NOM_NOUN", "PAST", "."],
    ["ABL_NOUN", "at/0", "aldI", "."],
    ["bu/1", "Cok/1", "."],
    ["ABL_NOUN", "sonra/0", "NOM_NOUN", "PAST", "."],
    ["bu/0", "yazI/0", "gUzel/0", "."],
]


def expand(slot, rng):
    if slot in CLASSES:
        return rng.choice(CLASSES[slot])
    if "/" in slot and slot != ".":
        word, idx = slot.rsplit("/", 1)
        return word, int(idx)
    return slot, 0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=19970)
    ap.add_argument("--sentences", type=int, default=64)
    ap.add_argument("--out", type=Path, default=Path(__file__).parent)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    text, gold = [], []
    for n in range(args.sentences):
        # every template at least once, then random ones
        shape = TEMPLATES[n] if n < len(TEMPLATES) else rng.choice(TEMPLATES)
        for slot in shape:
            word, idx = expand(slot, rng)
            parses = LEX[word]
            text.append("\t".join([word, *parses]))
            gold.append(f"{word}\t{parses[idx]}")
        text.append("")
        gold.append("")

    (args.out / "synthetic.txt").write_text("\n".join(text) + "\n")
    (args.out / "synthetic.gold").write_text("\n".join(gold) + "\n")


if __name__ == "__main__":
    main()
