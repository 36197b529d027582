# Reference oracle written from the algorithm description, independent of the C++ code.
# Regenerates tests/fixtures/tiny_gltsnn.json and the four-row tree used in test_extra_tree.cpp.
import json, math
M=(1<<64)-1
class R:
    def __init__(s,seed): s.st=seed&M; s.cache=None
    def u64(s):
        s.st=(s.st+0x9E3779B97F4A7C15)&M; z=s.st
        z=((z^(z>>30))*0xBF58476D1CE4E5B9)&M; z=((z^(z>>27))*0x94D049BB133111EB)&M
        return z^(z>>31)
    def unit(s): return (s.u64()>>11)*2.0**-53
    def perm(s,n):
        p=list(range(n))
        for i in range(n-1,0,-1):
            j=s.u64()%(i+1); p[i],p[j]=p[j],p[i]
        return p

def var(v):
    m = sum(v)/len(v); return sum((a-m)**2 for a in v)/len(v)

def fit_tree(X, y, rng, depth=0):
    n = len(y)
    d = len(X[0])
    if n < 2 or all(v == y[0] for v in y) or all(min(r[j] for r in X) == max(r[j] for r in X) for j in range(d)):
        return ('leaf', sum(y)/n)
    order = rng.perm(d)
    best = None
    for j in order:
        lo = min(r[j] for r in X); hi = max(r[j] for r in X)
        if lo == hi: continue
        u = rng.unit(); thr = lo + u*(hi-lo)
        if thr >= hi: thr = math.nextafter(hi, -math.inf)
        L = [y[i] for i in range(n) if X[i][j] <= thr]; R_ = [y[i] for i in range(n) if X[i][j] > thr]
        delta = var(y) - len(L)/n*var(L) - len(R_)/n*var(R_)
        if best is None or delta > best[0]: best = (delta, j, thr)
    _, j, thr = best
    li = [i for i in range(n) if X[i][j] <= thr]; ri = [i for i in range(n) if X[i][j] > thr]
    left = fit_tree([X[i] for i in li], [y[i] for i in li], rng, depth+1)
    right = fit_tree([X[i] for i in ri], [y[i] for i in ri], rng, depth+1)
    return ('split', j, thr, left, right)

def pred_tree(t, row):
    while t[0] == 'split':
        t = t[3] if row[t[1]] <= t[2] else t[4]
    return t[1]


def tiny_fixture():
    x = [0.3, 1.7, 2.2, 0.9, 3.1, 4.4, 2.8, 3.9, 0.1, 4.9]
    y = [1.0, 2.5, 2.0, 1.2, 4.0, 5.5, 3.3, 4.1, 0.4, 6.0]
    n, F = 10, 5
    meta = [[] for _ in range(n)]
    means = []; trees = []
    for f in range(F-1):
        t = sum(1 for i in range(n) if i*F < (f+1)*n)
        Xf = [[x[i]] + meta[i] for i in range(n)]
        tree = fit_tree(Xf[:t], y[:t], R(1000 + f)); trees.append(tree)
        p = [pred_tree(tree, Xf[i]) for i in range(t, n)]
        mu = sum(p)/len(p); means.append(mu)
        for i in range(n): meta[i].append(mu if i < t else p[i-t])

    def nn(points, targets, q):
        best = None
        for i, pt in enumerate(points):
            d2 = sum((a-b)**2 for a, b in zip(pt, q))
            if best is None or d2 < best[0]: best = (d2, i)
        return targets[best[1]]

    col = [nn(meta, y, meta[i]) for i in range(n)]

    # scalar evidence-maximization ridge on one column
    cm = sum(col)/n; ym = sum(y)/n
    cc = [c-cm for c in col]; nrm = math.sqrt(sum(c*c for c in cc)); sc = nrm if nrm > 0 else 1.0
    xn = [c/sc for c in cc]; yc = [v-ym for v in y]
    s2 = sum(v*v for v in xn); xty = sum(a*b for a, b in zip(xn, yc))
    vy = sum(v*v for v in yc)/n
    alpha = 1.0/vy if vy > 0 else 1.0; lam = 1.0; e = 1e-6
    wprev = None; it_used = 0
    def solve(alpha, lam):
        return 0.0 if s2 == 0 else xty/(s2 + lam/alpha)
    for it in range(300):
        w = solve(alpha, lam)
        gamma = alpha*s2/(lam + alpha*s2)
        rss = sum((a - w*b)**2 for a, b in zip(yc, xn))
        lam = (gamma + 2*e)/(w*w + 2*e)
        alpha = (n - gamma + 2*e)/(rss + 2*e)
        it_used = it + 1
        if wprev is not None and abs(w - wprev) < 1e-3: break
        wprev = w
    w = solve(alpha, lam)
    coef = w/sc; icpt = ym - coef*cm

    # predict on the training rows: raw cascade, no imputation
    pmeta = [[] for _ in range(n)]
    for f, tree in enumerate(trees):
        for i in range(n): pmeta[i].append(pred_tree(tree, [x[i]] + pmeta[i]))
    pcol = [nn(meta, y, pmeta[i]) for i in range(n)]
    preds = [coef*c + icpt for c in pcol]

    return (dict(x=x, y=y, num_folds=F, tree_seed_base=1000,
        train_counts=[sum(1 for i in range(n) if i*F < (f+1)*n) for f in range(F-1)],
        meta=meta, imputation_means=means, nn_outputs=col,
        ridge=dict(coef=coef, intercept=icpt, alpha=alpha, lambda_=lam, iterations=it_used),
        predict_meta=pmeta, predictions=preds))


def four_row_tree():
    X = [[0.0, 5.0], [1.0, 3.0], [2.0, 8.0], [3.0, 1.0]]
    return fit_tree(X, [1.0, 2.0, 7.0, 4.0], R(7))


if __name__ == '__main__':
    print(json.dumps(tiny_fixture(), indent=1))
    print(four_row_tree())
