#!/usr/bin/env python3
"""Recomputes the bundled golden files from the fixture log with networkx and
scipy, independently of the C++ code, and compares them field by field.

usage: check_goldens.py FIXTURE_LOG GOLDEN_DIR
"""
import json
import math
import sys
from collections import defaultdict
from fractions import Fraction

import networkx as nx
from scipy import optimize, special, stats


def load_arcs(path):
    arcs = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            rec = json.loads(line)
            x = rec["raw"]["x"]
            ins = [(i["prev_out"]["addr"], i["prev_out"]["value"]) for i in x["inputs"]]
            outs = [(o["addr"], o["value"]) for o in x["out"]]
            if sum(v for _, v in ins) == 0:
                continue
            for a, _ in ins:
                for b, _ in outs:
                    if a != b:
                        arcs.append((a, b, rec["received_at_ms"]))
    return arcs


def close(a, b, tol=1e-12):
    return a == b or abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def check(failures, name, got, want, tol=None):
    ok = close(got, want, tol) if tol is not None else got == want
    if not ok:
        failures.append(f"{name}: golden {got!r} != oracle {want!r}")


def metrics(arcs, golden, failures):
    nodes = list(dict.fromkeys(a for arc in arcs for a in arc[:2]))
    dg = nx.DiGraph()
    dg.add_nodes_from(nodes)
    dg.add_edges_from((a, b) for a, b, _ in arcs)
    ug = dg.to_undirected()

    check(failures, "nodes", golden["nodes"], len(nodes))
    check(failures, "edges", golden["edges"], len(arcs))
    check(failures, "generated_at_ms", golden["generated_at_ms"], max(t for _, _, t in arcs))
    check(failures, "dyads_connected", golden["dyads_connected"], ug.number_of_edges())
    check(failures, "triangles", golden["triangles"], sum(nx.triangles(ug).values()) // 3)
    check(failures, "transitivity_global", golden["transitivity_global"], nx.transitivity(ug), 1e-12)
    clustering = nx.clustering(ug)
    eligible = [clustering[v] for v in ug if ug.degree(v) >= 2]
    check(failures, "transitivity_avg_local", golden["transitivity_avg_local"],
          sum(eligible) / len(eligible) if eligible else 0.0, 1e-12)
    check(failures, "reciprocity", golden["reciprocity"], round(nx.reciprocity(dg), 4), 1e-15)
    check(failures, "max_clique_size", golden["max_clique_size"], max(len(c) for c in nx.find_cliques(ug)))
    check(failures, "mean_degree", golden["mean_degree"], 2 * len(arcs) / len(nodes), 1e-15)

    pairs = total = diameter = 0
    for _, lengths in nx.all_pairs_shortest_path_length(dg):
        for d in lengths.values():
            if d > 0:
                pairs += 1
                total += d
                diameter = max(diameter, d)
    check(failures, "diameter", golden["diameter"], diameter)
    check(failures, "mean_distance", golden["mean_distance"], total / pairs, 1e-12)


def fit(arcs, golden, failures):
    degree = defaultdict(int)
    for a, b, _ in arcs:
        degree[a] += 1
        degree[b] += 1
    data = sorted(degree.values())
    xmin = golden["fit"]["xmin"]
    tail = [x for x in data if x >= xmin]
    n = len(tail)
    log_sum = sum(math.log(x) for x in tail)
    nll = lambda a: a * log_sum + n * math.log(special.zeta(a, xmin))
    alpha = optimize.minimize_scalar(nll, bounds=(1 + 1e-9, 50), method="bounded",
                                     options={"xatol": 1e-12}).x
    check(failures, "observations", golden["observations"], len(data))
    check(failures, "n_tail", golden["fit"]["n_tail"], n)
    check(failures, "alpha", golden["fit"]["params"]["alpha"], alpha, 1e-6)
    if nll(golden["fit"]["params"]["alpha"]) > nll(alpha) + 1e-9:
        failures.append("golden alpha is not the likelihood maximum")
    alpha = golden["fit"]["params"]["alpha"]

    def ks(survival):
        top = max(tail)
        best = 0.0
        for x in range(xmin, top + 2):
            emp = sum(1 for v in tail if v <= x) / n
            best = max(best, abs(emp - (1 - survival(x + 1))))
        return best

    norm = special.zeta(alpha, xmin)
    check(failures, "power_law ks", golden["fit"]["ks_stat"], ks(lambda x: special.zeta(alpha, x) / norm), 1e-9)
    ll = sum(-alpha * math.log(x) for x in tail) - n * math.log(norm)
    check(failures, "power_law loglik", golden["fit"]["log_likelihood"], ll, 1e-9)

    alts = {a["family"]: a for a in golden["alternatives"]}
    mean = sum(tail) / n
    lam = 1 / (mean - xmin + 1)
    check(failures, "exponential lambda", alts["exponential"]["params"]["lambda"], lam, 1e-12)
    check(failures, "exponential ks", alts["exponential"]["ks_stat"], ks(lambda x: (1 - lam) ** (x - xmin)), 1e-9)

    check(failures, "poisson lambda", alts["poisson"]["params"]["lambda"], mean, 1e-12)
    p0 = stats.poisson.sf(xmin - 1, mean)
    check(failures, "poisson ks", alts["poisson"]["ks_stat"], ks(lambda x: stats.poisson.sf(x - 1, mean) / p0), 1e-9)

    logs = [math.log(x) for x in tail]
    mu = sum(logs) / n
    sigma = math.sqrt(sum((v - mu) ** 2 for v in logs) / n)
    check(failures, "log_normal mu", alts["log_normal"]["params"]["mu"], mu, 1e-12)
    check(failures, "log_normal sigma", alts["log_normal"]["params"]["sigma"], sigma, 1e-12)
    q = lambda x: stats.norm.sf((math.log(x - 0.5) - mu) / sigma)
    check(failures, "log_normal ks", alts["log_normal"]["ks_stat"], ks(lambda x: q(x) / q(xmin)), 1e-9)


def giant(arcs):
    order = list(dict.fromkeys(a for arc in arcs for a in arc[:2]))
    ug = nx.Graph()
    ug.add_nodes_from(order)
    ug.add_edges_from((a, b) for a, b, _ in arcs)
    rank = {v: i for i, v in enumerate(order)}
    comps = sorted(nx.connected_components(ug), key=lambda c: (-len(c), min(rank[v] for v in c)))
    keep = comps[0]
    return [arc for arc in arcs if arc[0] in keep]


def communities(arcs, golden, failures):
    arcs = giant(arcs)
    ug = nx.Graph()
    ug.add_edges_from((a, b) for a, b, _ in arcs)
    edges = [frozenset(e) for e in ug.edges()]
    index = {e: i for i, e in enumerate(edges)}
    incl = {v: set(ug[v]) | {v} for v in ug}

    levels = defaultdict(list)
    for k in ug:
        nbrs = sorted(ug[k])
        for x in range(len(nbrs)):
            for y in range(x + 1, len(nbrs)):
                i, j = nbrs[x], nbrs[y]
                sim = Fraction(len(incl[i] & incl[j]), len(incl[i] | incl[j]))
                levels[sim].append((index[frozenset((k, i))], index[frozenset((k, j))]))

    parent = list(range(len(edges)))

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    def density():
        groups = defaultdict(list)
        for i, e in enumerate(edges):
            groups[find(i)].append(e)
        total = 0.0
        for members in groups.values():
            m = len(members)
            nn = len(set().union(*members))
            if nn > 2:
                total += m * (m - (nn - 1)) / ((nn - 2) * (nn - 1))
        return 2 * total / len(edges), groups

    best, best_groups = density()
    for sim in sorted(levels, reverse=True):
        for a, b in levels[sim]:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
        d, groups = density()
        if d >= best - 1e-12:
            best, best_groups = max(best, d), groups

    want = {frozenset(g) for g in best_groups.values()}
    got = {frozenset(frozenset(pair) for pair in c) for c in golden["communities"]}
    check(failures, "community count", golden["community_count"], len(want))
    if got != want:
        failures.append("community edge sets differ from the oracle sweep")
    check(failures, "partition_density", golden["partition_density"], best, 1e-9)

    # profiles: raw arcs per community
    owner = {}
    for c, members in enumerate(golden["communities"]):
        for pair in members:
            owner[frozenset(pair)] = c
    counts = defaultdict(lambda: [0, 0])
    for a, b, _ in arcs:
        c = owner[frozenset((a, b))]
        counts[(c, a)][1] += 1
        counts[(c, b)][0] += 1
    for prof in golden["profiles"]:
        for node in prof["nodes"]:
            if counts[(prof["index"], node["address"])] != [node["in_degree"], node["out_degree"]]:
                failures.append(f"profile {prof['index']} node {node['address']} degrees differ")
                return


def main():
    log, golden_dir = sys.argv[1], sys.argv[2]
    arcs = load_arcs(log)
    failures = []
    with open(f"{golden_dir}/metrics_6h.json") as fh:
        metrics(arcs, json.load(fh), failures)
    with open(f"{golden_dir}/fit_6h.json") as fh:
        fit(arcs, json.load(fh), failures)
    with open(f"{golden_dir}/communities_6h.json") as fh:
        communities(arcs, json.load(fh), failures)
    for f in failures:
        print("MISMATCH", f)
    print("golden oracle:", "ok" if not failures else f"{len(failures)} mismatches")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
