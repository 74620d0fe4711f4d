import math

import numpy as np
import pytest

from conftest import random_admissible_pair, random_sl2, rel_err
from minlorentz.algebra import Vec4, d_inner, inner
from minlorentz.errors import (DegenerateError, EmptyGridError,
                               NotGeneralTypeError)
from minlorentz.funcs import ExprFn
from minlorentz.motions import mobius_pair_from_spinors, transform_triple
from minlorentz.errors import PoleError
from minlorentz.nullcurve import (WeierstrassTriple, enneper_curve,
                                  enneper_triple, integrate_curve,
                                  reparametrize_natural)
from minlorentz.surface import (MinimalSurface, SurfaceType, classify,
                                gauss_map, induced_E, position, sample_grid,
                                write_surface_csv, write_surface_obj)

M1 = MinimalSurface.make(enneper_curve(2, 1, 1, (0.1, 1.5)),
                         enneper_curve(1, 2, 1, (-0.5, 0.5)))


def flat_surface():
    gen = lambda: WeierstrassTriple(ExprFn("1"), ExprFn("0"), ExprFn("0"),
                                    -2.0, 2.0)
    g2 = WeierstrassTriple(ExprFn("1"), ExprFn("1"), ExprFn("1"), -2.0, 2.0)
    return MinimalSurface(gen(), g2, 0.0, 0.0)


class TestPosition:
    def test_flat_plane(self):
        g1 = WeierstrassTriple(ExprFn("1"), ExprFn("0"), ExprFn("0"), -2., 2.)
        S = MinimalSurface(g1, g1, 0.0, 0.0)
        x = position(S, 0.7, 0.2)
        # both null curves are t*(1,-1,0,0), so x = u*(1,-1,0,0)
        assert np.allclose(x.components(), (0.7, -0.7, 0.0, 0.0), atol=1e-12)

    def test_zero_at_base(self):
        S = MinimalSurface(enneper_curve(2, 1, 1), enneper_curve(1, 2, 1),
                           0.0, 0.0)
        assert position(S, 0.0, 0.0) == Vec4(0.0, 0.0, 0.0, 0.0)

    def test_hyperbolic_harmonicity_fd(self):
        h = 0.01
        u, v = 0.5, 0.25
        xs = {key: position(M1, u + du, v + dv).components()
              for key, du, dv in (("c", 0, 0), ("u+", h, 0), ("u-", -h, 0),
                                  ("v+", 0, h), ("v-", 0, -h))}
        scale = max(1.0, max(abs(c) for c in xs["c"]))
        for k in range(4):
            resid = (xs["u+"][k] - 2 * xs["c"][k] + xs["u-"][k]
                     - xs["v+"][k] + 2 * xs["c"][k] - xs["v-"][k]) / h ** 2
            assert abs(resid) <= 1e-6 * scale

    def test_isotropic_tangents_are_null_fd(self):
        # x_t1 = alpha1'/2 and x_t2 = alpha2'/2 are lightlike
        h = 1e-4
        for (u, v) in ((0.45, 0.1), (0.6, 0.18)):
            t1, t2 = u + v, u - v
            d1 = integrate_curve(M1.gen1, t1 - h, t1 + h).scale(1 / (4 * h))
            d2 = integrate_curve(M1.gen2, t2 - h, t2 + h).scale(1 / (4 * h))
            for d in (d1, d2):
                assert abs(inner(d, d)) <= 1e-8 * (1.0 + d.norm_euclid() ** 2)


class TestInducedE:
    def test_m1_value_at_canonical_point(self):
        assert induced_E(M1, 0.5, 0.5) == pytest.approx(-0.25, rel=1e-13)

    def test_cross_path_agreement(self):
        # half the velocity pairing, the canonical display, and the triples
        # display must coincide for canonical data
        trip1, trip2 = enneper_triple(2, 1, 1), enneper_triple(1, 2, 1)
        for (u, v) in ((0.5, 0.5), (0.45, 0.6), (0.62, 0.38)):
            t1, t2 = u + v, u - v
            e_pairing = induced_E(M1, u, v)
            f1, f2 = trip1.f(t1), trip2.f(t2)
            e_triples = -f1 * f2 * (trip1.g(t1) - trip2.g(t2)) * \
                (trip1.h(t1) - trip2.h(t2))
            P = (M1.gen1.g(t1) - M1.gen2.g(t2)) * \
                (M1.gen1.h(t1) - M1.gen2.h(t2))
            delta = -1.0 if P > 0 else 1.0
            e_canonical = delta * abs(P) / (4.0 * 2.0)
            assert rel_err(e_pairing, e_triples) <= 1e-9
            assert rel_err(e_pairing, e_canonical) <= 1e-9

    def test_degenerate_point_rejected(self):
        gen = enneper_curve(1, 1, 1)
        S = MinimalSurface(gen, gen, 0.0, 0.0)
        with pytest.raises(DegenerateError):
            induced_E(S, 0.5, 0.0)  # t1 = t2 makes g1 = g2


class TestClassify:
    def test_example_types(self):
        m2 = MinimalSurface.make(enneper_curve(2, -1, 1),
                                 enneper_curve(1, -2, -1))
        m3 = MinimalSurface.make(enneper_curve(2, 1, 1),
                                 enneper_curve(1, -2, 1))
        assert classify(M1) is SurfaceType.FIRST
        assert classify(m2) is SurfaceType.SECOND
        assert classify(m3) is SurfaceType.THIRD

    def test_third_type_renumbering(self):
        S = MinimalSurface.make(enneper_curve(1, -2, 1),
                                enneper_curve(2, 1, 1))
        assert S.renumbered
        assert classify(S) is SurfaceType.THIRD
        # after renumbering the first generator is the spacelike one
        from minlorentz.nullcurve import alpha_pp_sq
        assert alpha_pp_sq(S.gen1, 0.1) > 0 > alpha_pp_sq(S.gen2, 0.1)

    def test_degenerate_generator_rejected(self):
        bad = WeierstrassTriple(ExprFn("1"), ExprFn("t^2"), ExprFn("t"),
                                -1.0, 1.0)
        with pytest.raises(NotGeneralTypeError):
            MinimalSurface.make(bad, enneper_triple(1, 2, 1))

    def test_invariant_under_reparametrization(self, rng):
        tr1, tr2 = random_admissible_pair(rng)
        S_raw = MinimalSurface.make(tr1, tr2)
        S_can = MinimalSurface.make(reparametrize_natural(tr1, 512),
                                    reparametrize_natural(tr2, 512))
        assert classify(S_raw) is classify(S_can)

    def test_invariant_under_motions(self, rng):
        tr1, tr2 = random_admissible_pair(rng)
        want = classify(MinimalSurface.make(tr1, tr2))
        for _ in range(20):
            b1, b2 = random_sl2(rng), random_sl2(rng)
            m1, m2 = mobius_pair_from_spinors(b1, b2)
            try:
                moved = MinimalSurface.make(transform_triple(tr1, m1, m2),
                                            transform_triple(tr2, m1, m2))
            except PoleError:
                continue
            assert classify(moved) is want
            break


class TestGaussMap:
    def test_phi_squared_vanishes(self, rng):
        for _ in range(20):
            u = rng.uniform(0.4, 0.6)
            v = rng.uniform(0.4, 0.6)
            phi = gauss_map(M1, u, v)
            sq = d_inner(phi, phi)
            parts = phi.null_parts()
            scale = max(p.norm_euclid() for p in parts) ** 2
            assert abs(sq.re) <= 1e-12 * scale
            assert abs(sq.im) <= 1e-12 * scale

    def test_phi_norm_is_twice_E(self, rng):
        for _ in range(10):
            u = rng.uniform(0.4, 0.6)
            v = rng.uniform(0.4, 0.6)
            phi = gauss_map(M1, u, v)
            norm = d_inner(phi, phi.conjugate())
            assert rel_err(norm.re, 2.0 * induced_E(M1, u, v)) <= 1e-9
            assert abs(norm.im) <= 1e-12 * abs(norm.re)

    def test_phi_phibar_null_components_equal_pairing(self):
        u, v = 0.5, 0.45
        phi = gauss_map(M1, u, v)
        a1, a2 = phi.null_parts()
        pairing = inner(a1, a2)
        c1, c2 = d_inner(phi, phi.conjugate()).null_decompose()
        assert c1 == pytest.approx(pairing, rel=1e-14)
        assert c2 == pytest.approx(pairing, rel=1e-14)


class TestSampleGrid:
    def test_single_point_grid(self):
        grid = sample_grid(M1, (0.5, 0.5), (0.5, 0.5), 1, 1)
        s = grid.samples[0]
        assert (s.u, s.v) == (0.5, 0.5)
        assert s.E == pytest.approx(-0.25, rel=1e-13)
        assert s.K == pytest.approx(20.0, rel=1e-12)
        assert not s.singular

    def test_regular_region_has_no_flags(self):
        S = MinimalSurface.make(enneper_curve(2, 1, 1, (0.0, 2.0)),
                                enneper_curve(1, 2, 1, (-1.0, 1.0)))
        grid = sample_grid(S, (0.3, 0.7), (0.35, 0.7), 9, 9)
        assert grid.singular_count == 0

    def test_straddling_singular_line_flags_points(self):
        S = MinimalSurface.make(enneper_curve(2, 1, 1, (0.0, 2.0)),
                                enneper_curve(1, 2, 1, (-1.0, 1.0)))
        # u = 3v crosses this window; (0.3, 0.1) and (0.6, 0.2) lie on it
        grid = sample_grid(S, (0.3, 0.7), (0.1, 0.3), 5, 5)
        assert grid.singular_count > 0
        flagged = [s for s in grid.samples if s.singular]
        assert all(math.isnan(s.K) for s in flagged)

    def test_all_singular_rejected(self):
        gen = enneper_curve(1, 1, 1)
        S = MinimalSurface(gen, gen, 0.0, 0.0)
        with pytest.raises(EmptyGridError):
            sample_grid(S, (0.2, 0.8), (0.0, 0.0), 5, 1)  # v = 0: E = 0

    def test_threads_do_not_change_values(self):
        g1 = sample_grid(M1, (0.4, 0.6), (0.4, 0.6), 6, 6, threads=1)
        g4 = sample_grid(M1, (0.4, 0.6), (0.4, 0.6), 6, 6, threads=4)
        for a, b in zip(g1.samples, g4.samples):
            assert a == b

    def test_E_sign_constant_on_component(self):
        grid = sample_grid(M1, (0.4, 0.6), (0.4, 0.6), 8, 8)
        signs = {math.copysign(1.0, s.E) for s in grid.samples
                 if not s.singular}
        assert signs == {-1.0}


class TestExports:
    def test_csv_layout(self, tmp_path):
        grid = sample_grid(M1, (0.45, 0.55), (0.45, 0.55), 3, 3)
        path = tmp_path / "grid.csv"
        write_surface_csv(grid, str(path))
        lines = path.read_text().splitlines()
        assert lines[0] == "u,v,t1,t2,x1,x2,x3,x4,E,K,kappa,type,singular"
        assert len(lines) == 1 + 9
        first = lines[1].split(",")
        assert float(first[0]) == 0.45
        assert first[11] == "first"
        assert first[12] == "0"

    def test_csv_floats_roundtrip(self, tmp_path):
        grid = sample_grid(M1, (0.45, 0.55), (0.45, 0.55), 3, 3)
        path = tmp_path / "grid.csv"
        write_surface_csv(grid, str(path))
        row = path.read_text().splitlines()[5].split(",")
        s = grid.samples[4]
        assert float(row[8]) == s.E and float(row[9]) == s.K

    def test_obj_projection(self, tmp_path):
        grid = sample_grid(M1, (0.45, 0.55), (0.45, 0.55), 4, 4)
        path = tmp_path / "grid.obj"
        write_surface_obj(grid, str(path), drop_axis="x3")
        lines = path.read_text().splitlines()
        assert lines[0] == "# projection: dropped x3"
        verts = [ln for ln in lines if ln.startswith("v ")]
        faces = [ln for ln in lines if ln.startswith("f ")]
        assert len(verts) == 16
        assert len(faces) == 2 * 9
        assert all(len(ln.split()) == 4 for ln in verts)

    def test_obj_rejects_bad_axis(self, tmp_path):
        grid = sample_grid(M1, (0.45, 0.55), (0.45, 0.55), 3, 3)
        with pytest.raises(ValueError):
            write_surface_obj(grid, str(tmp_path / "g.obj"), drop_axis="x9")
