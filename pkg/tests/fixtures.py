"""Shared sentence fixtures (TPTP syntax)."""

SAT_SINGLE = [
    "![X]: ?[Y]: (p(X) <=> q(Y))",
    "![X]: ?[Y]: (r(X,X) | ~ s(Y,Y))",
    "?[Z]: ![X]: ?[Y]: ((p(X) | q(Z)) & (r(Y,Z) | ~ p(Z)))",
    "![X]: ?[Y]: ((p(X) & q(Y)) | (~ p(X) & ~ q(Y)))",
    "![X]: ?[Y]: (p(X) => (q(Y) & ~ p(Y)))",
    "?[Z]: ![X]: ?[Y]: (Y != Z & (p(X) | p(Y)))",
    "![X1,X2]: ?[Y]: (r(X1,X2) | q(Y))",
    "![X]: ?[Y1,Y2]: ((p(X) <=> q(Y1)) & r(Y1,Y2))",
    "![X]: ?[Y]: ((p(X) | q(Y)) & (~ p(X) | ~ q(Y)))",
    "?[Z]: ![X]: ?[Y]: (p(Z) & ~ p(Y) & (q(X) | r(Y,Y)))",
]

UNSAT_SINGLE = [
    "(![X]: p(X)) & (?[Y]: ~ p(Y))",
    "![X]: ?[Y]: (q(X) & ~ q(Y))",
    "![X]: ?[Y]: (p(Y) & ~ p(X))",
    "?[Z]: ![X]: ?[Y]: (r(Z,Y) & ~ r(Z,X))",
    "![X]: ?[Y]: ((p(X) & ~ q(X)) & (q(Y) | ~ p(Y)))",
    "![X]: ?[Y]: (Y != Y | (s(X,X) & ~ s(Y,Y)))",
    "?[Z1,Z2]: ![X]: ?[Y]: (p(Z1) & ~ p(Z2) & (p(X) <=> p(Y)) & Z1 = Z2)",
    "![X1,X2]: ?[Y]: (r(X1,X2) & ~ r(Y,Y))",
    "![X]: ?[Y]: ((p(X) | q(X)) & ~ p(Y) & ~ q(Y))",
    "?[Z]: ![X]: ?[Y]: ((p(X) => q(Z)) & p(Y) & ~ q(Z))",
]

UNARY_FN_SAT = [
    "![X]: p(f(X))",
    "![X]: (p(f(X)) <=> ~ p(X))",
    "![X]: ?[Y]: (p(f(Y)) & ~ q(X))",
    "![X]: (p(f(g(X))) & ~ q(g(X)) & q(f(X)))",
    "?[Z]: ![X]: (p(f(Z)) & (q(X) | ~ p(f(X))))",
]

UNARY_FN_UNSAT = [
    "![X]: (p(f(X)) & ~ p(X))",
    "![X]: (p(f(f(X))) & ~ p(X))",
    "(![X]: (p(X) => q(f(X)))) & (?[Y]: p(Y)) & (![X]: ~ q(X))",
]

MONADIC_EQ_SAT = [
    "![X]: ?[Y]: X = Y",
    "?[Z1,Z2]: Z1 != Z2",
    "?[Z1,Z2]: (Z1 != Z2 & p(Z1) & p(Z2))",
    "![X]: (X = c | p(X))",
]

MONADIC_EQ_UNSAT = [
    "?[Z1,Z2]: (Z1 != Z2) & ![X]: X = c",
    "(![X,Y]: X = Y) & (?[U,V]: (p(U) & ~ p(V)))",
    "?[Z]: (p(Z) & ~ p(c) & Z = c)",
]

EQ_SF_SAT = [
    "?[Z]: ![X]: ?[Y]: (Y != Z & (p(X) | p(Y)))",
    "![X1,X2]: (X1 = X2 | s(X1,X2))",
    "?[Z]: ![X]: ?[Y]: (s(Z,Y) & Y != Z & (X = Z | p(X)))",
    "![X]: ?[Y]: (Y != Y | s(X,X))",
]

EQ_SF_UNSAT = [
    "?[Z1,Z2]: ![X]: ?[Y]: (p(Z1) & ~ p(Z2) & (p(X) <=> p(Y)) & Z1 = Z2)",
    "?[Z]: ![X]: (X = Z & ?[Y]: (s(Y,Y) & ~ s(Z,Z)))",
    "?[Z]: ![X]: (~ s(Z,X) & ?[Y]: (s(Z,Y) & Y = Z))",
]
