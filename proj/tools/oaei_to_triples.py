#!/usr/bin/env python3
"""Convert an OAEI instance-matching pair (two RDF files plus a reference
alignment) into the TSV layout read by `sigma align` and the acceptance runner.

Example (Person11/Person12):

    python3 tools/oaei_to_triples.py person11.rdf person12.rdf \
        dataset11_dataset12_goldstandard_person.xml data/person \
        --label-props given_name,surname

Writes kb1_rel.tsv, kb1_prop.tsv, kb2_rel.tsv, kb2_prop.tsv, mapping.tsv
and gt.tsv. Requires rdflib.
"""

import argparse
import sys
import xml.etree.ElementTree as ET
from collections import defaultdict
from pathlib import Path

try:
    import rdflib
    from rdflib.namespace import RDF, RDFS
except ImportError:
    sys.exit("oaei_to_triples: rdflib is required (pip install rdflib)")

RDF_RESOURCE = "{http://www.w3.org/1999/02/22-rdf-syntax-ns#}resource"
LABEL = "label"


def local_name(uri):
    text = str(uri)
    for sep in ("#", "/"):
        if sep in text:
            text = text.rsplit(sep, 1)[1]
    return text


def clean(value):
    return " ".join(str(value).split())


def node_id(node):
    if isinstance(node, rdflib.BNode):
        return "_:" + str(node)
    return clean(node)


def load_kb(path, label_props):
    """Returns (rel, prop, relation names, property names)."""
    graph = rdflib.Graph()
    graph.parse(str(path), format=rdflib.util.guess_format(str(path)) or "xml")
    rel, prop = [], []
    label_parts = defaultdict(dict)
    for s, p, o in graph:
        if p == RDF.type:
            continue
        name = LABEL if p == RDFS.label else local_name(p)
        if isinstance(o, rdflib.Literal):
            value = clean(o)
            if not value:
                continue
            prop.append((node_id(s), name, value))
            if name in label_props:
                label_parts[node_id(s)].setdefault(name, []).append(value)
        else:
            rel.append((node_id(s), name, node_id(o)))
    if label_props:
        for entity, parts in label_parts.items():
            words = [v for p in label_props for v in sorted(parts.get(p, []))]
            prop.append((entity, LABEL, " ".join(words)))
    rel = sorted(set(rel))
    prop = sorted(set(prop))
    return rel, prop, {t[1] for t in rel}, {t[1] for t in prop}


def load_alignment(path):
    """Pairs of the reference alignment with relation '=' (or none given)."""
    pairs = []
    for cell in ET.parse(path).iter():
        if not cell.tag.endswith("Cell"):
            continue
        found = {}
        for child in cell:
            tag = child.tag.rsplit("}", 1)[-1]
            if tag in ("entity1", "entity2"):
                found[tag] = child.get(RDF_RESOURCE) or (child.text or "").strip()
            elif tag == "relation":
                found[tag] = (child.text or "").strip()
        if found.get("relation", "=") == "=" and found.get("entity1") and found.get("entity2"):
            pairs.append((clean(found["entity1"]), clean(found["entity2"])))
    return pairs


def write_tsv(path, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as out:
        for row in rows:
            out.write("\t".join(row) + "\n")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("kb1", type=Path)
    ap.add_argument("kb2", type=Path)
    ap.add_argument("alignment", type=Path)
    ap.add_argument("out_dir", type=Path)
    ap.add_argument("--label-props", default="",
                    help="comma-separated properties joined into the entity label "
                         "(default: rdfs:label)")
    ap.add_argument("--year-props", default="",
                    help="comma-separated shared properties compared by year")
    ap.add_argument("--string-props", default="",
                    help="comma-separated shared properties compared by token overlap")
    args = ap.parse_args(argv)

    label_props = [p for p in args.label_props.split(",") if p]
    year_props = {p for p in args.year_props.split(",") if p}
    string_props = {p for p in args.string_props.split(",") if p}

    rel1, prop1, rels1, props1 = load_kb(args.kb1, label_props)
    rel2, prop2, rels2, props2 = load_kb(args.kb2, label_props)
    gt = load_alignment(args.alignment)
    if not gt:
        sys.exit(f"oaei_to_triples: no '=' cells in {args.alignment}")

    out = args.out_dir
    out.mkdir(parents=True, exist_ok=True)
    write_tsv(out / "kb1_rel.tsv", rel1)
    write_tsv(out / "kb1_prop.tsv", prop1)
    write_tsv(out / "kb2_rel.tsv", rel2)
    write_tsv(out / "kb2_prop.tsv", prop2)
    write_tsv(out / "gt.tsv", gt)

    mapping = [("rel", r, r) for r in sorted(rels1 & rels2)]
    for p in sorted((props1 & props2) - {LABEL}):
        kind = "year" if p in year_props else "string" if p in string_props else "exact"
        mapping.append(("prop", p, p, kind))
    mapping.append(("label", LABEL, LABEL))
    write_tsv(out / "mapping.tsv", mapping)

    print(f"kb1: {len(rel1)} rel, {len(prop1)} prop; kb2: {len(rel2)} rel, {len(prop2)} prop; "
          f"gt: {len(gt)} pairs -> {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
