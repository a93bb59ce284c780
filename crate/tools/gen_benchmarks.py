#!/usr/bin/env python3
"""Regenerates the .qc benchmark circuits in benchmarks/.

Constructions:
  mod5_4          X + 4 CNOT + 4 CCNOT phase-oracle form of the 5-qubit
                  "x = 0 mod 5" marker.
  barenco_tof_3   Barenco double-staircase 3-controlled Toffoli with one
                  borrowed ancilla (4 CCNOTs).
  nc_tof_n        Nielsen-Chuang n-controlled Toffoli with n-2 clean
                  ancillas (2(n-2)+1 CCNOTs).
  vbe_adder_3     Vedral-Barenco-Ekert 3-bit ripple adder (10 CCNOTs).
  gf2^k_mult      shift-and-add GF(2^k) multiplier: k^2 CCNOTs plus the
                  in-place LFSR (rotate + feedback CNOT) on the a register,
                  unwound at the end. Primitive polynomials: see POLY.
  rc_adder_6      Cuccaro MAJ/UMA ripple adder, 6 bits (12 CCNOTs).
"""

import os

OUT = os.path.join(os.path.dirname(__file__), "..", "benchmarks")

POLY = {
    4: [0, 1],          # x^4 + x + 1
    5: [0, 2],          # x^5 + x^2 + 1
    6: [0, 1],          # x^6 + x + 1
    7: [0, 1],          # x^7 + x + 1
    8: [0, 1, 3, 4],    # x^8 + x^4 + x^3 + x + 1
}


def emit(name, header_comment, wires, inputs, outputs, gates):
    lines = [f"# {line}" for line in header_comment]
    lines.append(".v " + " ".join(wires))
    if inputs:
        lines.append(".i " + " ".join(inputs))
    if outputs:
        lines.append(".o " + " ".join(outputs))
    lines.append("")
    lines.append("BEGIN")
    lines.extend(gates)
    lines.append("END")
    path = os.path.join(OUT, name + ".qc")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")
    print("wrote", path)


def mod5_4():
    gates = ["X 5"]
    gates += [f"tof {i} 5" for i in (1, 2, 3, 4)]
    gates += ["tof 1 2 5", "tof 1 4 5", "tof 2 3 5", "tof 3 4 5"]
    emit(
        "mod5_4",
        ["Mod5_4: marks |x> with x = 0 mod 5 on the output wire.",
         "4 CCNOTs + 4 CNOTs; 28 T before reduction."],
        list("12345"), list("1234"), ["5"], gates,
    )


def barenco_tof_3():
    gates = ["tof 3 4 5", "tof 1 2 4", "tof 3 4 5", "tof 1 2 4"]
    emit(
        "barenco_tof_3",
        ["Barenco 3-controlled Toffoli, double staircase on a borrowed",
         "ancilla: controls 1 2 3, ancilla 4, target 5. 28 T before."],
        list("12345"), ["1", "2", "3", "5"], ["5"], gates,
    )


def nc_tof(n):
    controls = [f"c{i}" for i in range(1, n + 1)]
    ancs = [f"x{i}" for i in range(1, n - 1)]
    wires = controls + ancs + ["t"]
    compute = [f"tof c1 c2 x1"]
    for i in range(2, n - 1):
        compute.append(f"tof c{i + 1} x{i - 1} x{i}")
    gates = list(compute)
    gates.append(f"tof c{n} x{n - 2} t")
    gates.extend(reversed(compute))
    emit(
        f"nc_tof_{n}",
        [f"Nielsen-Chuang {n}-controlled Toffoli with {n - 2} clean ancillas;",
         f"{2 * (n - 2) + 1} CCNOTs, {7 * (2 * (n - 2) + 1)} T before reduction."],
        wires, controls + ["t"], ["t"], gates,
    )


def vbe_adder_3():
    wires = ["c0", "a0", "b0", "c1", "a1", "b1", "c2", "a2", "b2", "z"]

    def carry(c, a, b, cn):
        return [f"tof {a} {b} {cn}", f"tof {a} {b}", f"tof {c} {b} {cn}"]

    def rcarry(c, a, b, cn):
        return [f"tof {c} {b} {cn}", f"tof {a} {b}", f"tof {a} {b} {cn}"]

    def s(c, a, b):
        return [f"tof {a} {b}", f"tof {c} {b}"]

    gates = []
    gates += carry("c0", "a0", "b0", "c1")
    gates += carry("c1", "a1", "b1", "c2")
    gates += carry("c2", "a2", "b2", "z")
    gates += ["tof a2 b2"]
    gates += s("c2", "a2", "b2")
    gates += rcarry("c1", "a1", "b1", "c2")
    gates += s("c1", "a1", "b1")
    gates += rcarry("c0", "a0", "b0", "c1")
    gates += s("c0", "a0", "b0")
    emit(
        "vbe_adder_3",
        ["Vedral-Barenco-Ekert ripple adder, 3 bits: |a>|b> -> |a>|a+b>.",
         "10 CCNOTs, 70 T before reduction."],
        wires,
        ["a0", "b0", "a1", "b1", "a2", "b2"],
        ["b0", "b1", "b2", "z"],
        gates,
    )


def gf_mult(k):
    a = [f"a{i}" for i in range(k)]
    b = [f"b{i}" for i in range(k)]
    c = [f"c{i}" for i in range(k)]
    taps = POLY[k]

    def lfsr_step():
        # x * A in place: rotate right, then feedback CNOTs from the new a0
        g = []
        for i in range(k - 1, 0, -1):
            g.append(f"swap a{i - 1} a{i}")
        for r in taps:
            if r != 0:
                g.append(f"tof a0 a{r}")
        return g

    gates = []
    steps = []
    for j in range(k):
        if j > 0:
            step = lfsr_step()
            steps.append(step)
            gates += step
        for i in range(k):
            gates.append(f"tof a{i} b{j} c{i}")
    for step in reversed(steps):
        gates += [g for g in reversed(step)]
    emit(
        f"gf2^{k}_mult",
        [f"GF(2^{k}) multiplier, shift-and-add with in-place LFSR on the a",
         f"register (restored afterwards); c += a*b. {k * k} CCNOTs,",
         f"{7 * k * k} T before reduction. Modulus: x^{k} + "
         + " + ".join(f"x^{r}" if r > 1 else ("x" if r == 1 else "1")
                      for r in sorted(taps, reverse=True)) + "."],
        a + b + c, a + b, c, gates,
    )


def rc_adder_6(n=6):
    wires = (["cin"]
             + [w for i in range(n) for w in (f"b{i}", f"a{i}")]
             + ["cout"])

    def maj(c, b, a):
        return [f"tof {a} {b}", f"tof {a} {c}", f"tof {c} {b} {a}"]

    def uma(c, b, a):
        return [f"tof {c} {b} {a}", f"tof {a} {c}", f"tof {c} {b}"]

    gates = []
    prev = "cin"
    chain = []
    for i in range(n):
        chain.append((prev, f"b{i}", f"a{i}"))
        prev = f"a{i}"
    for (cc, bb, aa) in chain:
        gates += maj(cc, bb, aa)
    gates.append(f"tof a{n - 1} cout")
    for (cc, bb, aa) in reversed(chain):
        gates += uma(cc, bb, aa)
    emit(
        "rc_adder_6",
        ["Cuccaro ripple-carry adder, 6 bits (MAJ/UMA chain with carry-in",
         f"and carry-out). {2 * n} CCNOTs, {14 * n} T before reduction."],
        wires,
        ["cin"] + [w for i in range(n) for w in (f"a{i}", f"b{i}")],
        [f"b{i}" for i in range(n)] + ["cout"],
        gates,
    )


if __name__ == "__main__":
    os.makedirs(OUT, exist_ok=True)
    mod5_4()
    barenco_tof_3()
    nc_tof(3)
    nc_tof(5)
    nc_tof(10)
    vbe_adder_3()
    for k in range(4, 9):
        gf_mult(k)
    rc_adder_6()
