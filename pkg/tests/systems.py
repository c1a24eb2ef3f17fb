"""The worked example systems, transcribed edge by edge."""
from paralts.plts import Plts, PointedPlts

# morphism example: M1 -> M2 over {a, b, c, d}
M1_EDGES = [
    ("w1", "a", "w2", 0.7, 0.2),
    ("w2", "b", "w3", 0.3, 0.5),
    ("w3", "c", "w2", 0.2, 0.3),
    ("w3", "d", "w4", 0.5, 0.8),
]
M2_EDGES = [
    ("v1", "a", "v2", 0.9, 0.1),
    ("v2", "b", "v3", 0.5, 0.2),
    ("v3", "c", "v2", 0.6, 0.1),
    ("v3", "c", "v4", 0.8, 0.4),
    ("v3", "a", "v5", 0.4, 0.7),
]
ABCD = ["a", "b", "c", "d"]


def m1():
    return Plts.from_edges(M1_EDGES, labels=ABCD)


def m1_without_w4():
    return Plts.from_edges(M1_EDGES[:3], labels=ABCD)


def m2():
    return Plts.from_edges(M2_EDGES, labels=ABCD)


# simulation example: w1 is simulated by v1
def simeg_left():
    return Plts.from_edges([
        ("w1", "a", "w2", 0.4, 0.7),
        ("w1", "a", "w3", 0.3, 0.6),
        ("w2", "b", "w4", 0.2, 0.8),
        ("w3", "c", "w5", 0.2, 0.9),
    ], labels=["a", "b", "c"])


def simeg_right():
    return Plts.from_edges([
        ("v1", "a", "v2", 0.5, 0.5),
        ("v2", "b", "v3", 0.3, 0.5),
        ("v2", "c", "v4", 0.5, 0.5),
    ], labels=["a", "b", "c"])


SIMEG_WITNESS = {("w1", "v1"), ("w2", "v2"), ("w3", "v2"), ("w4", "v3"), ("w5", "v4")}


# bisimulation example (claimed w1 ~ v1)
def bisim_left():
    return Plts.from_edges([
        ("w1", "a", "w2", 0.5, 0.3),
        ("w1", "a", "w3", 0.7, 0.2),
        ("w2", "c", "w3", 0.2, 0.3),
        ("w3", "c", "w3", 0.4, 0.5),
        ("w2", "c", "w2", 0.4, 0.5),
    ], labels=["a", "c"])


def bisim_right():
    return Plts.from_edges([
        ("v1", "a", "v2", 0.7, 0.2),
        ("v2", "c", "v2", 0.4, 0.5),
    ], labels=["a", "c"])


BISIM_WITNESS = {("w1", "v1"), ("w2", "v2"), ("w3", "v2")}


# trace inclusion without similarity
def counter_left():
    return Plts.from_edges([("w1", "a", "w2", 0.5, 0.3), ("w2", "b", "w3", 0.7, 0.2)])


def counter_right():
    return Plts.from_edges([("v1", "a", "v2", 0.7, 0.2), ("v2", "b", "v3", 0.5, 0.3)])


# product / sum example
def prod_left():
    return PointedPlts.from_edges([("i1", "a", "w", 0.7, 0.2)], initial="i1")


def prod_right():
    return PointedPlts.from_edges([("i2", "b", "v", 0.4, 0.2)], initial="i2")


# prefix counterexample
def prefix_left():
    return PointedPlts.from_edges([("i1", "a", "w", 0.7, 0.2)], initial="i1")


def prefix_right():
    return PointedPlts.from_edges([("i2", "b", "v", 0.8, 0.1)], initial="i2")
