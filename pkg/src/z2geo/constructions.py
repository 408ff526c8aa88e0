"""Recipe trees for the constructions behind each geography family."""

from __future__ import annotations

from .recipes import Block, Node, op

SC = "simply_connected"
SPIN_SUM = ("spin_gluing", SC)
# Z2-construction with a simply connected complement of the surface
SCC = "complement_simply_connected"
TYPE_II = (SCC, "minimal_cover")
TYPE_III = (SCC, "complement_spin", "minimal_cover")
TYPE_III_RP2 = TYPE_III + ("odd_rp2",)


def knot_surgered_k3() -> Node:
    return op("torus_surgery", Block.of("E", n=2), flags=("dual_torus", "fibered_knot", SC), label="E(2)_K")


def m_family(n: int, s: int) -> Node:
    """M_n(s): E(2)_K summed with E(2s) along a fiber, then n genus-2 sums with W."""
    node = op("fiber_sum", knot_surgered_k3(), Block.of("E", n=2 * s), genus=1, flags=SPIN_SUM)
    for _ in range(n):
        node = op("fiber_sum", node, Block.of("W"), genus=2, flags=SPIN_SUM)
    return node


def z_mn(m: int, n: int) -> Node:
    summed = op("fiber_sum", Block.of("calZ", n=n), Block.of("E", n=2 * m), genus=1, flags=("spin_gluing",))
    return op("torus_surgery", summed, flags=("luttinger", "dual_torus", SC), label=f"Z_{m},{n}")


# type (ii), even b2+

def u_family(n: int, s: int) -> Node:
    second = op("fiber_sum", m_family(n, s), knot_surgered_k3(), genus=1, flags=SPIN_SUM)
    return op("z2_construct", second, genus=2, flags=TYPE_II)


def sigma0_genus2(n: int) -> Node:
    return op("z2_construct", Block.of("Z", n=n), genus=2, flags=TYPE_II)


def z_mn_genus2(m: int, n: int) -> Node:
    return op("z2_construct", z_mn(m, n), genus=2, flags=TYPE_II)


# type (ii), odd b2+

def m_torus(n: int, s: int) -> Node:
    return op("z2_construct", m_family(n, s), genus=1, flags=TYPE_II)


def z_mn_torus(m: int, n: int) -> Node:
    return op("z2_construct", z_mn(m, n), genus=1, flags=TYPE_II)


def sigma0_torus(m: int) -> Node:
    return op("z2_construct", Block.of("Z", n=m), genus=1, flags=TYPE_II)


# type (iii), even b2+

def chain_g2_with_m(n: int, s: int) -> Node:
    summed = op("fiber_sum", m_family(n, s), Block.of("ChainG2"), genus=1, flags=(SC,))
    return op("z2_construct", summed, genus=2, flags=TYPE_III)


def chain_g2_with_z(m: int) -> Node:
    summed = op("fiber_sum", Block.of("Z'", m=m), Block.of("ChainG2"), genus=1, flags=(SC,))
    return op("z2_construct", summed, genus=2, flags=TYPE_III)


def chain_g4_with_m(n: int, s: int) -> Node:
    summed = op("fiber_sum", m_family(n, s), Block.of("ChainG4"), genus=1, flags=(SC,))
    return op("z2_construct", summed, genus=4, flags=TYPE_III_RP2)


def chain_g4_with_z(m: int) -> Node:
    summed = op("fiber_sum", Block.of("ChainG4"), Block.of("Z'", m=m), genus=1, flags=(SC,))
    return op("z2_construct", summed, genus=4, flags=TYPE_III_RP2)


# type (iii), odd b2+

def e1_with_m(n: int, s: int) -> Node:
    summed = op("fiber_sum", m_family(n, s), Block.of("E", n=1), genus=1, flags=(SC,), label="U")
    return op("z2_construct", summed, genus=1, flags=TYPE_III)


def elliptic_with_z(n: int, m: int) -> Node:
    summed = op("fiber_sum", Block.of("E", n=n), Block.of("Z'", m=m), genus=1, flags=(SC,))
    return op("z2_construct", summed, genus=1, flags=TYPE_III)


def sigma8_line(m: int) -> Node:
    """Free quotient of Z_m #_T E(2) #_T Z_m."""
    half = op("fiber_sum", Block.of("Z", n=m), Block.of("E", n=2), genus=1, flags=SPIN_SUM)
    double = op("fiber_sum", half, Block.of("Z", n=m), genus=1, flags=SPIN_SUM)
    return op("z2_quotient", double, flags=("minimal_cover",))


def sigma8_line_construct(m: int) -> Node:
    summed = op("fiber_sum", Block.of("Z", n=m), Block.of("E", n=1), genus=1, flags=(SC,))
    return op("z2_construct", summed, genus=1, flags=TYPE_III)


def chain_g3_with_m(n: int, s: int) -> Node:
    summed = op("fiber_sum", m_family(n, s), Block.of("ChainG3"), genus=1, flags=(SC,))
    return op("z2_construct", summed, genus=3, flags=TYPE_III_RP2)


def hyperelliptic_quotient(k: int) -> Node:
    """X_g with g = 2k+1: its fiber double is E(g+1), then the free quotient."""
    g = 2 * k + 1
    double = op("z2_double", Block.of("X", g=g), genus=g, flags=(SCC, "complement_spin"))
    return op("z2_quotient", double, flags=("odd_rp2", "minimal_cover"))


def hyperelliptic_with_z(g: int, m: int) -> Node:
    summed = op("fiber_sum", Block.of("X", g=g), Block.of("Z'", m=m), genus=1, flags=(SC,))
    return op("z2_construct", summed, genus=g, flags=TYPE_III_RP2)
