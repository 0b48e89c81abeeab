"""Resolve the two-tail genus-1 graph and print each leaf's components."""

import json
import os

from locres.modgraph import validate_graph, vz_pipeline

HERE = os.path.dirname(os.path.abspath(__file__))


def main(path=os.path.join(HERE, "inputs", "two_tail.json")):
    G = validate_graph(json.load(open(path)))
    rep = vz_pipeline(G)
    print("graph %s: %s, centers %s" % (G.name, rep.verdict, [c["ideal"] for c in rep.centers]))
    for leaf in rep.leaves:
        print("  chart %s  diagonal %s" % (leaf.path, [str(e) for e in leaf.entries]))
        for c in leaf.components:
            tag = " (main)" if c["name"] == leaf.main else ""
            print("    %s%s smooth=%s kernel rank=%s" % (c["name"], tag, c["smooth"], c["rank"]))


if __name__ == "__main__":
    main()
