import hodge

d = hodge.Divisor(["x", "y"], [("x^2+y^3", "9/10")])
print(d, d.support)

r = hodge.compute(d, 1)
print(r)
assert r.exact and r.method == "recursion"
assert r.ideal == hodge.Ideal(["x^2", "x*y", "y^3"], ["x", "y"])

r2 = hodge.compute(d, 2)
assert r2.ideal.contains("y^4 - 14/5*x^2*y")
assert not r2.ideal.contains("y^4")

chain = hodge.chain(d, 2)
assert [c.k for c in chain] == [0, 1, 2]
assert chain[0].ideal.contains_ideal(chain[1].ideal)

snc = hodge.Divisor(["x", "y"], [("x", "1/2"), ("y", "1/2")])
assert sorted(hodge.compute(snc, 1).generators) == ["x", "y"]

b, twist = hodge.Divisor(["x"], [("x", "5/2")]).periodic_reduce()
assert b.components == [("x", "1/2")] and twist == "x^2"

status, lines = hodge.certify_triviality(
    '[{"a":[2],"b":1},{"a":[3],"b":2},{"a":[6],"b":4}]', ["4/5"], 0)
assert status == "TRIVIAL", lines

try:
    hodge.compute(hodge.Divisor(["x", "y"], [("x^2*y+y^4+x^5", "1")]), 1)
    raise SystemExit("expected MethodUnavailable")
except hodge.MethodUnavailable:
    pass

try:
    hodge.Divisor(["x"], [("x + z", "1/2")])
    raise SystemExit("expected ValueError")
except ValueError as e:
    print("rejected:", e)

ok, report = hodge.verify(["periodicity"], 1)
assert ok, report

print("smoke test ok")
