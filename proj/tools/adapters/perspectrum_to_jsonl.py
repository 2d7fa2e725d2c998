#!/usr/bin/env python3
"""Convert PERSPECTRUM release files into a ctd perspectives file.

Reads perspectrum_with_answers_v1.0.json and perspective_pool_v1.0.json and writes one
{claim_id, claim_text, text, stance} record per (claim, perspective). SUPPORT maps to
"support", UNDERMINE to "refute". Perspectives listed under both stances for one claim are
dropped, as are duplicates.
"""

import argparse
import json
import sys

STANCES = {"SUPPORT": "support", "UNDERMINE": "refute"}


def convert(claims, pool):
    texts = {p["pId"]: " ".join(p["text"].split()) for p in pool}
    for claim in claims:
        by_text = {}
        order = []
        for cluster in claim.get("perspectives", []):
            stance = STANCES.get(cluster.get("stance_label_3"))
            if stance is None:
                continue
            for pid in cluster.get("pids", []):
                text = texts.get(pid)
                if not text:
                    continue
                if text not in by_text:
                    order.append(text)
                    by_text[text] = stance
                elif by_text[text] != stance:
                    by_text[text] = None
        for text in order:
            if by_text[text] is not None:
                yield {
                    "claim_id": "perspectrum-%s" % claim["cId"],
                    "claim_text": " ".join(claim["text"].split()),
                    "text": text,
                    "stance": by_text[text],
                }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--claims", required=True, help="perspectrum_with_answers_v1.0.json")
    parser.add_argument("--pool", required=True, help="perspective_pool_v1.0.json")
    parser.add_argument("--out", required=True, help="output perspectives .jsonl")
    args = parser.parse_args(argv)

    with open(args.claims, encoding="utf-8") as f:
        claims = json.load(f)
    with open(args.pool, encoding="utf-8") as f:
        pool = json.load(f)

    count = 0
    with open(args.out, "w", encoding="utf-8", newline="\n") as out:
        for record in convert(claims, pool):
            out.write(json.dumps(record, ensure_ascii=False) + "\n")
            count += 1
    print("records=%d" % count, file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
