"""Smoke test for the pigrad extension: run after `pip install -e crates/py --no-build-isolation`."""

import json

import pigrad

k7 = pigrad.Algebra.named("K7:g,h")
assert k7.dim == 4 and k7.group_order == 4
assert [pigrad.codim(k7, n) for n in range(1, 5)] == [4, 9, 16, 25]
assert [pigrad.proper_codim(k7, n) for n in range(0, 4)] == [1, 3, 2, 0]

total = pigrad.Algebra.named("K7:g,h+G2:g,h")
assert pigrad.cocharacter(total, "1,0;0,1") == [("((),(1),(1),())", 2)]

c2 = pigrad.Algebra.named("C2:g", group="2")
assert pigrad.check_identity(c2, "1;1", "x1*x2") is None
c3 = pigrad.Algebra.named("C3:g", group="2")
assert pigrad.check_identity(c3, "1;1", "x1*x2") == "x1=E, x2=E gives 1/1*E^2"

assert pigrad.verify_basis(c2)["pass"]
assert pigrad.equivalent(pigrad.Algebra.named("G2:g,h"), pigrad.Algebra.named("Walpha:-1,g,h"))["equivalent"]
assert not pigrad.equivalent(c2, c3, max_degree=2)["equivalent"]

g = pigrad.growth(k7, 2, 4)
assert g["leading"] == "1/1" and g["upper_bound"] == "25/2"

back = pigrad.Algebra.from_json(k7.to_json())
assert pigrad.codim_report(back, 3)["codim"] == 16
assert len(pigrad.catalog_names()) == 15
assert json.loads(k7.to_json())["group"] == {"type": "cyclic_product", "orders": [2, 2]}

try:
    pigrad.Algebra.named("Bogus")
except ValueError:
    pass
else:
    raise AssertionError("unknown name accepted")

print("smoke test passed")
