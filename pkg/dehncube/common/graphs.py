""" Graph helpers on scipy sparse matrices
"""
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components


def graph_components(n_nodes, edges):
    """Connected components of an undirected graph given as an edge list.

    :param n_nodes: number of nodes, numbered ``0 .. n_nodes-1``
    :param edges: iterable of ``(p, q)`` pairs, self loops allowed
    :return: ``(n_components, labels)`` as returned by scipy
    """
    e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    graph = csr_matrix((np.ones(len(e), dtype=np.int8), (e[:, 0], e[:, 1])),
                       shape=(n_nodes, n_nodes))
    return connected_components(graph, directed=False)
