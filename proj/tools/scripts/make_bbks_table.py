#!/usr/bin/env python3
"""Writes a z=0 linear matter power spectrum table (BBKS transfer function,
normalised to sigma_8) in the two-column format read by hacc-mini."""

import argparse

import numpy as np
from scipy.integrate import simpson


def bbks(k, omega_m, h):
    q = k / (omega_m * h * h)
    return (np.log1p(2.34 * q) / (2.34 * q)
            * (1 + 3.89 * q + (16.1 * q) ** 2 + (5.46 * q) ** 3 + (6.71 * q) ** 4) ** -0.25)


def sigma_r(k, p, radius):
    x = k * radius
    w = 3 * (np.sin(x) - x * np.cos(x)) / x ** 3
    return np.sqrt(simpson(k ** 3 * p * w ** 2 / (2 * np.pi ** 2), x=np.log(k)))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--omega-m", type=float, default=0.265)
    ap.add_argument("--h", type=float, default=0.71)
    ap.add_argument("--ns", type=float, default=0.963)
    ap.add_argument("--sigma8", type=float, default=0.8)
    ap.add_argument("--points", type=int, default=200)
    ap.add_argument("out")
    args = ap.parse_args()

    fine = np.logspace(-5, 3, 20000)
    shape = fine ** args.ns * bbks(fine, args.omega_m, args.h) ** 2
    amp = (args.sigma8 / sigma_r(fine, shape, 8.0 / args.h)) ** 2

    k = np.logspace(-4, 2, args.points)
    p = amp * k ** args.ns * bbks(k, args.omega_m, args.h) ** 2
    with open(args.out, "w") as f:
        f.write("# k [1/Mpc]  P(k) [Mpc^3], z = 0\n")
        f.write(f"# BBKS, omega_m = {args.omega_m}, h = {args.h}, n_s = {args.ns}, sigma_8 = {args.sigma8}\n")
        for kk, pp in zip(k, p):
            f.write(f"{kk:.8e} {pp:.8e}\n")


if __name__ == "__main__":
    main()
