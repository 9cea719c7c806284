"""Shared helpers for the test modules."""

import json
from importlib import resources

from algset.fincat import PresheafCategory
from algset.sheaves import fixture_sites, is_sheaf

# criterion lines collected by test_acceptance and printed in the summary
ACCEPTANCE_LINES: dict[int, str] = {}


def fixture_presheaves(count: int = 10):
    """(site, category, presheaf) triples: the packaged presheaf files first,
    then every presheaf of total size <= 3 on the two-object site and the
    non-sheaves on the dense topology of the V poset."""
    sites = fixture_sites()
    cats = {name: PresheafCategory(site.C) for name, site in sites.items()}
    out, seen = [], set()

    def add(name, X):
        key = (name, cats[name].canonical_form(X))
        if key not in seen and len(out) < count:
            seen.add(key)
            out.append((sites[name], cats[name], X))

    folder = resources.files("algset") / "fixtures" / "presheaves"
    for entry in sorted(folder.iterdir(), key=lambda p: p.name):
        spec = json.loads(entry.read_text())
        add(spec["site"], cats[spec["site"]].presheaf(spec["sizes"], spec.get("restrict")))
    for X in cats["two-object"].objects(3):
        add("two-object", X)
    for X in cats["dense-v"].objects(3):
        if not is_sheaf(sites["dense-v"], X):
            add("dense-v", X)
    return out
