"""Shared generators for the test modules."""

from melnikov.group import GElem, complete_graph, enumerate_edges, g_mul


def random_connected(rng, q, m, size):
    """A random connected complete graph grown from the root by edge steps."""
    verts = [GElem.identity(m)]
    edges = enumerate_edges(q, m)
    while len(verts) < size:
        v = rng.choice(verts)
        w = g_mul(rng.choice(edges).as_gelem(), v)
        if w not in verts:
            verts.append(w)
    return complete_graph(verts, q, m)
