#!/usr/bin/env python3
"""Independent recomputation of the expected values frozen into the unit tests.

Run: python3 tests/oracles/derive_expected.py
Nothing here imports or calls the C++ code.
"""
import math
import re

TOKEN_RE = re.compile(r"\w+|[^\w\s]+")


def tokenize():
    for s in ["Good muffins cost $3.88 in New York.  Please buy me\ntwo of them.\n\nThanks.",
              "Good muffins cost $3.88 in New York. Please buy me two of them. Thanks.",
              "Hello, world!", "Zürich straße—über #MAGA @user 3.5x"]:
        print("tokenize", repr(s), TOKEN_RE.findall(s))


def lda_conditional(docs, z, V, K, alpha, beta, d, i):
    n_dk = [[0] * K for _ in docs]
    n_kw = [[0] * V for _ in range(K)]
    n_k = [0] * K
    for dd, (ws, zs) in enumerate(zip(docs, z)):
        for ii, (w, k) in enumerate(zip(ws, zs)):
            if (dd, ii) == (d, i):
                continue
            n_dk[dd][k] += 1
            n_kw[k][w] += 1
            n_k[k] += 1
    w = docs[d][i]
    p = [(n_dk[d][k] + alpha) * (n_kw[k][w] + beta) / (n_k[k] + V * beta)
         for k in range(K)]
    s = sum(p)
    return [x / s for x in p], n_dk


def lda_fixture():
    # "aab", "bb" over {a:0, b:1}; tokens expanded by ascending id.
    docs = [[0, 0, 1], [1, 1]]
    z = [[0, 1, 0], [1, 1]]
    for d, i in [(0, 0), (0, 2), (1, 0)]:
        p, _ = lda_conditional(docs, z, 2, 2, 0.5, 0.5, d, i)
        print("lda_conditional", d, i, ["%.17g" % x for x in p])
    # plug-in log likelihood of the same state
    K, V, alpha, beta = 2, 2, 0.5, 0.5
    n_dk = [[0] * K for _ in docs]
    n_kw = [[0] * V for _ in range(K)]
    n_k = [0] * K
    for d, (ws, zs) in enumerate(zip(docs, z)):
        for w, k in zip(ws, zs):
            n_dk[d][k] += 1
            n_kw[k][w] += 1
            n_k[k] += 1
    ll = 0.0
    for d, ws in enumerate(docs):
        theta = [(n_dk[d][k] + alpha) / (len(ws) + K * alpha) for k in range(K)]
        for w in ws:
            ll += math.log(sum(theta[k] * (n_kw[k][w] + beta) / (n_k[k] + V * beta)
                               for k in range(K)))
    T = sum(len(ws) for ws in docs)
    print("log_likelihood %.17g perplexity %.17g" % (ll, math.exp(-ll / T)))


def slda_fixture():
    # one document, words (0, 0, 1), z = (0, 1, 1), V=2, K=2, alpha=beta=0.5
    docs = [[0, 0, 1]]
    z = [[0, 1, 1]]
    eta = [1.0, -1.0]
    sigma2, y = 0.25, 1.0
    for i in range(3):
        _, n_dk = lda_conditional(docs, z, 2, 2, 0.5, 0.5, 0, i)
        lda_p, _ = lda_conditional(docs, z, 2, 2, 0.5, 0.5, 0, i)
        w = []
        for k in range(2):
            counts = list(n_dk[0])
            counts[k] += 1
            zbar = [c / 3 for c in counts]
            pred = sum(e * zb for e, zb in zip(eta, zbar))
            w.append(lda_p[k] * math.exp(-(y - pred) ** 2 / (2 * sigma2)))
        s = sum(w)
        print("slda_conditional", i, ["%.17g" % (x / s) for x in w])


if __name__ == "__main__":
    tokenize()
    lda_fixture()
    slda_fixture()
    print("idf ln10 %.17g ln4 %.17g" % (math.log(10), math.log(4)))
