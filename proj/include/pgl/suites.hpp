/**
 * @file suites.hpp
 * @brief Named verification suites behind the CLI. Each suite replays a family
 *        of structural identities at seeded random samples and reports one
 *        max-aggregated residual per named check; each suite also carries one
 *        documented corrupted variant (enabled by SuiteConfig::mutate) that is
 *        guaranteed to trip at least one check, as a self-test of the suite's
 *        discriminating power.
 *
 * Reports are deterministic functions of (suite, seed, dims, trials, tol,
 * mutate) except for wall_time_ms.
 */
#pragma once

#include "pgl/core.hpp"
#include "pgl/cotangent_groupoid.hpp"
#include "pgl/jet.hpp"
#include "pgl/linear_poisson.hpp"
#include "pgl/operator_groupoid.hpp"
#include "pgl/poisson_jet.hpp"
#include "pgl/poisson_lie.hpp"
#include "pgl/serialization.hpp"
#include "pgl/structure_constants.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pgl {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    bool pass = true;
};

struct SuiteConfig {
    std::string suite;
    int trials = 20;
    std::uint64_t seed = 2026;
    std::vector<int> dims;  // suite-specific sizes; empty selects the defaults
    double tol = kDefaultTol;
    bool mutate = false;
    std::optional<Json> instance;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    int trials = 0;
    double tol = kDefaultTol;
    std::string mutation;  // empty when the suite ran uncorrupted
    std::vector<CheckResult> per_check;
    int failures = 0;
    double max_residual = 0.0;
    double wall_time_ms = 0.0;
};

namespace detail {

/// Max-aggregates residuals per check name, keeping first-feed order.
struct CheckSet {
    std::vector<CheckResult> checks;

    void feed(const std::string& name, double residual) {
        for (CheckResult& c : checks)
            if (c.name == name) {
                c.residual = std::max(c.residual, residual);
                return;
            }
        checks.push_back({name, residual, true});
    }
};

inline std::vector<int> dims_or(const SuiteConfig& cfg, std::vector<int> fallback) {
    return cfg.dims.empty() ? std::move(fallback) : cfg.dims;
}

inline void require_kind(const Json& instance, const char* kind, const std::string& suite) {
    const std::string got = instance.value("kind", std::string("<missing>"));
    if (got != kind)
        throw std::invalid_argument("instance kind '" + got + "' is not usable with suite '" +
                                    suite + "' (expected " + kind + ")");
}

inline Mat random_borel(int n, Rng& rng) {
    return borel_from_functional(n, rng.gaussian(n * n, 1).col(0));
}

inline AlgebraElement random_unitary_side(int n, Rng& rng) {
    const std::vector<Mat> ub = unitary_basis(n);
    const RVec c = rng.gaussian(n * n, 1).col(0);
    Mat m = Mat::Zero(n, n);
    for (int k = 0; k < n * n; ++k) m += cxd(c(k), 0.0) * ub[static_cast<size_t>(k)];
    return AlgebraElement::unitary_side(m);
}

// ---------------------------------------------------------------- suite 1

inline std::string run_unitary_multiplicative(const SuiteConfig& cfg, CheckSet& out) {
    // Corrupted variant: the transported covectors feeding the second factor
    // are raw Ad images, never re-projected onto the Borel side.
    const auto lam_matrix = [](const Mat& g, const Mat& A, const Mat& B) {
        return flat_pairing(p2(Mat(g.adjoint() * A * g)), p1(Mat(g.adjoint() * B * g)));
    };
    Rng root(cfg.seed);
    for (int n : dims_or(cfg, {2, 3})) {
        for (int t = 0; t < cfg.trials; ++t) {
            Rng rng = root.fork(static_cast<std::uint64_t>(n * 100003 + t));
            const GroupElement g(rng.unitary(n)), h(rng.unitary(n));
            const AlgebraElement a1 = AlgebraElement::borel_side(random_borel(n, rng));
            const AlgebraElement a2 = AlgebraElement::borel_side(random_borel(n, rng));
            out.feed("identity-vanishing",
                     std::abs(lambda_R(GroupElement::identity(n), a1, a2)));
            const double l12 = lambda_R(g, a1, a2);
            out.feed("skewness", std::abs(l12 + lambda_R(g, a2, a1)));
            out.feed("skewness", std::abs(lambda_R(g, a1, a1)));
            if (!cfg.mutate) {
                out.feed("multiplicativity", multiplicativity_residual(g, h, a1, a2));
            } else {
                const Mat t1 = g.mat.adjoint() * a1.mat * g.mat;
                const Mat t2 = g.mat.adjoint() * a2.mat * g.mat;
                const double lhs = lam_matrix(Mat(g.mat * h.mat), a1.mat, a2.mat);
                const double rhs = lam_matrix(g.mat, a1.mat, a2.mat) + lam_matrix(h.mat, t1, t2);
                out.feed("multiplicativity", std::abs(lhs - rhs));
            }
        }
    }
    return cfg.mutate ? "skip-reprojection" : "";
}

// ---------------------------------------------------------------- suite 2

inline std::string run_unitary_cocycle(const SuiteConfig& cfg, CheckSet& out) {
    // Corrupted variant: the algebra cocycle's defining pairing is computed
    // with the opposite sign. Every linear cocycle identity is blind to an
    // overall sign, so the detector is the derived-bracket-commutator pin.
    Rng root(cfg.seed);
    for (int n : dims_or(cfg, {2})) {
        for (int t = 0; t < cfg.trials; ++t) {
            Rng rng = root.fork(static_cast<std::uint64_t>(n * 100003 + t));
            const AlgebraElement x = random_unitary_side(n, rng);
            const AlgebraElement y = random_unitary_side(n, rng);
            const AlgebraElement a1 = AlgebraElement::borel_side(random_borel(n, rng));
            const AlgebraElement a2 = AlgebraElement::borel_side(random_borel(n, rng));
            const AlgebraElement a3 = AlgebraElement::borel_side(random_borel(n, rng));
            out.feed("algebra-cocycle", cocycle_algebra_residual(x, y, a1, a2));

            Mat elem;
            if (!cfg.mutate) {
                elem = derived_bracket(a1, a2).element.mat;
            } else {
                const std::vector<Mat> ub = unitary_basis(n);
                RVec v(n * n);
                for (int m = 0; m < n * n; ++m) {
                    const Mat br = ub[static_cast<size_t>(m)] * a2.mat -
                                   a2.mat * ub[static_cast<size_t>(m)];
                    v(m) = flat_pairing(a1.mat, p1(br));
                }
                elem = borel_from_functional(n, v);
            }
            const Mat comm = a1.mat * a2.mat - a2.mat * a1.mat;
            out.feed("derived-bracket-commutator", rel(max_norm(Mat(elem - comm)), max_norm(comm)));

            const auto db = [](const AlgebraElement& u, const AlgebraElement& v) {
                return derived_bracket(u, v).element;
            };
            const Mat jac = db(db(a1, a2), a3).mat + db(db(a2, a3), a1).mat +
                            db(db(a3, a1), a2).mat;
            const double scale =
                std::max({max_norm(a1.mat), max_norm(a2.mat), max_norm(a3.mat)});
            out.feed("derived-bracket-jacobi", rel(max_norm(jac), scale * scale * scale));
        }
    }
    return cfg.mutate ? "flip-cocycle-sign" : "";
}

// ---------------------------------------------------------------- suite 3

/// Bracket at the promoted level with the gradient reconstruction reading
/// left-translated chart directions u X_m instead of the right-translated
/// X_m u — the corrupted variant of tower promotion.
inline double tower_bracket_left_translated(const TowerScalarField& f, const TowerScalarField& g,
                                            const GroupElement& base, int level) {
    const GroupElement u = promote(base, level);
    const RVec x = pack_matrix_point(u.mat);
    const Jet2 fj = f.at_level(level)(x);
    const Jet2 gj = g.at_level(level)(x);
    const std::vector<Mat> ub = unitary_basis(level);
    const int d = level * level;
    RVec vf(d), vg(d);
    for (int m = 0; m < d; ++m) {
        const RVec dir = pack_matrix_point(Mat(u.mat * ub[static_cast<size_t>(m)]));
        vf(m) = fj.g.dot(dir);
        vg(m) = gj.g.dot(dir);
    }
    const AlgebraElement df = AlgebraElement::borel_side(borel_from_functional(level, vf));
    const AlgebraElement dg = AlgebraElement::borel_side(borel_from_functional(level, vg));
    return lambda_R(u, df, dg);
}

inline std::string run_tower_stability(const SuiteConfig& cfg, CheckSet& out) {
    Rng root(cfg.seed);
    for (int n : dims_or(cfg, {2})) {
        double largest = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            Rng rng = root.fork(static_cast<std::uint64_t>(n * 100003 + t));
            const GroupElement base(rng.unitary(n));
            const TowerElement elem = TowerElement::group(base);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const TowerScalarField f = entry_field(i, j, false);
                    const TowerScalarField g = entry_field(j, i, true);
                    const double bn = tower_bracket(f, g, elem, n);
                    largest = std::max(largest, std::abs(bn));
                    for (int level = n + 1; level <= n + 2; ++level) {
                        const double bl = cfg.mutate
                                              ? tower_bracket_left_translated(f, g, base, level)
                                              : tower_bracket(f, g, elem, level);
                        out.feed("level-invariance", rel(std::abs(bl - bn), std::abs(bn)));
                    }
                }
            out.feed("constant-field",
                     std::abs(tower_bracket(constant_family(3.0), entry_field(0, 1, false), elem,
                                            n + 1)));
        }
        out.feed("nontrivial-sample", largest > 1e-3 ? 0.0 : 1.0);
    }
    return cfg.mutate ? "left-translated-directions" : "";
}

// ------------------------------------------------- cotangent suites (4, 5)

inline std::vector<MatrixLieGroupSpec> cotangent_group_list(const SuiteConfig& cfg) {
    if (cfg.instance) {
        require_kind(*cfg.instance, "group-spec", cfg.suite);
        return {group_spec_from_json(*cfg.instance)};
    }
    if (!cfg.dims.empty()) {
        std::vector<MatrixLieGroupSpec> gs;
        for (int n : cfg.dims) gs.push_back(groups::unitary(n));
        return gs;
    }
    return {groups::special_unitary2(), groups::unitary(2)};
}

inline std::string run_cotangent_axioms(const SuiteConfig& cfg, CheckSet& out) {
    // Corrupted variant: multiplication keeps the left factor's covector
    // coordinate instead of the right factor's.
    const auto multiply = [&cfg](const MatrixLieGroupSpec& G, const CotangentPoint& p,
                                 const CotangentPoint& q) {
        CotangentPoint prod = ct_multiply(G, p, q);
        if (cfg.mutate) prod.xi = p.xi;
        return prod;
    };
    Rng root(cfg.seed);
    std::uint64_t gi = 0;
    for (const MatrixLieGroupSpec& G : cotangent_group_list(cfg)) {
        ++gi;
        const int d = G.dim();
        for (int t = 0; t < cfg.trials; ++t) {
            Rng rng = root.fork(gi * 1000003 + static_cast<std::uint64_t>(t));
            const CotangentPoint z{random_group_element(G, rng), rng.gaussian(d, 1).col(0)};
            const CotangentPoint y{random_group_element(G, rng), ct_target(G, z)};
            const CotangentPoint x{random_group_element(G, rng), ct_target(G, y)};

            // A corrupted product can leave the composable locus entirely;
            // the gate then throws, which the suite records as a unit failure.
            const auto guarded = [](auto&& thunk) -> double {
                try {
                    return thunk();
                } catch (const NonComposableError&) {
                    return 1.0;
                }
            };
            const CotangentPoint xy = multiply(G, x, y);
            const CotangentPoint yz = multiply(G, y, z);
            out.feed("membership", G.membership(xy.g));
            out.feed("membership", G.membership(ct_invert(G, x).g));
            out.feed("associativity", guarded([&] {
                         return point_distance(multiply(G, xy, z), multiply(G, x, yz));
                     }));
            out.feed("unit-laws",
                     point_distance(multiply(G, x, ct_unit(G, ct_source(G, x))), x));
            out.feed("unit-laws",
                     point_distance(multiply(G, ct_unit(G, ct_target(G, x)), x), x));
            const CotangentPoint ix = ct_invert(G, x);
            out.feed("inverse-laws",
                     point_distance(multiply(G, x, ix), ct_unit(G, ct_target(G, x))));
            out.feed("inverse-laws",
                     point_distance(multiply(G, ix, x), ct_unit(G, ct_source(G, x))));
            const RVec ts = ct_target(G, xy) - ct_target(G, x);
            const RVec ss = ct_source(G, xy) - ct_source(G, y);
            out.feed("graph-compat", rel(ts.cwiseAbs().maxCoeff(), 1.0));
            out.feed("graph-compat", rel(ss.cwiseAbs().maxCoeff(), 1.0));
        }
    }
    return cfg.mutate ? "keep-left-coordinate" : "";
}

inline std::string run_cotangent_symplectic(const SuiteConfig& cfg, CheckSet& out) {
    // Corrupted variant: target fibers are taken to be the source fibers
    // (pure group directions), dropping the covector transport entirely.
    Rng root(cfg.seed);
    std::uint64_t gi = 0;
    for (const MatrixLieGroupSpec& G : cotangent_group_list(cfg)) {
        ++gi;
        const CotangentReport rep =
            verify_symplectic_groupoid(G, cfg.trials, root.fork(gi).next_u64());
        out.feed("omega-multiplicativity", rep.omega_multiplicativity);
        out.feed("zero-section-lagrangian",
                 std::max(rep.zero_section_lagrangian, rep.zero_section_ok ? 0.0 : 1.0));
        out.feed("dual-pair", rep.dual_pair);
        out.feed("units-coisotropy", std::max(rep.units_coisotropy, rep.units_ok ? 0.0 : 1.0));
        if (!cfg.mutate) {
            out.feed("fiber-orthogonality", rep.fiber_orthogonality);
        } else {
            const int d = G.dim();
            for (int t = 0; t < cfg.trials; ++t) {
                Rng rng = root.fork(gi * 1000003 + static_cast<std::uint64_t>(t));
                const CotangentPoint p{random_group_element(G, rng), rng.gaussian(d, 1).col(0)};
                const CtTangent u{RVec::Zero(d), G.element(rng.gaussian(d, 1).col(0))};
                const CtTangent v{RVec::Zero(d), G.element(rng.gaussian(d, 1).col(0))};
                const double scale = max_norm(u.x) * max_norm(v.x);
                out.feed("fiber-orthogonality",
                         rel(std::abs(canonical_form(G, p, u, v)), scale));
            }
        }
    }
    return cfg.mutate ? "swap-source-target" : "";
}

// ---------------------------------------------------------------- suite 6

inline std::vector<StructureConstants> kks_constants_list(const SuiteConfig& cfg) {
    if (cfg.instance) {
        require_kind(*cfg.instance, "structure-constants", cfg.suite);
        return {structure_constants_from_json(*cfg.instance)};
    }
    if (!cfg.dims.empty()) {
        std::vector<StructureConstants> cs;
        for (int n : cfg.dims) cs.push_back(groups::unitary(n).constants);
        return cs;
    }
    return {groups::so3().constants, groups::unitary(2).constants};
}

inline std::string run_kks(const SuiteConfig& cfg, CheckSet& out) {
    // Corrupted variant: the linear bivector is rebuilt from the moduli of
    // the structure constants, silently symmetrizing the anchor.
    Rng root(cfg.seed);
    std::uint64_t ci = 0;
    for (const StructureConstants& sc : kks_constants_list(cfg)) {
        ++ci;
        const int d = sc.dim;
        BivectorField W;
        if (!cfg.mutate) {
            W = lie_poisson_bivector(sc, cfg.tol);
        } else {
            W.dim = d;
            W.flat_rows = RMat::Identity(d, d);
            W.tol = cfg.tol;
            W.entry = [sc, d](int i, int j, const RVec& x) {
                Jet2 acc = Jet2::constant(0.0, d);
                for (int k = 0; k < d; ++k) {
                    const double c = std::abs(sc.at(i, j, k));
                    if (c != 0.0) acc = acc + c * Jet2::variable(x(k), k, d);
                }
                return acc;
            };
        }
        for (int t = 0; t < cfg.trials; ++t) {
            Rng rng = root.fork(ci * 1000003 + static_cast<std::uint64_t>(t));
            const RVec x = rng.gaussian(d, 1).col(0);
            out.feed("skewness", W.skewness_residual(x));
            const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
            const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
            const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
            out.feed("jacobi", jacobiator(W, ScalarField::coordinate(d, i),
                                          ScalarField::coordinate(d, j),
                                          ScalarField::coordinate(d, k), x));
            const OneFormField s1 = OneFormField::differential(ScalarField::coordinate(d, i));
            const OneFormField s2 = OneFormField::differential(ScalarField::coordinate(d, j));
            const OneFormField s3 = OneFormField::differential(ScalarField::coordinate(d, k));
            out.feed("schouten", schouten_residual(W, s1, s2, s3, x));

            // Stabilizer of xi: nullspace of N_{kj} = sum_l c_{jk}^l xi_l,
            // closed under the bracket of the constants.
            const RVec xi = rng.gaussian(d, 1).col(0);
            RMat N(d, d);
            for (int kk = 0; kk < d; ++kk)
                for (int jj = 0; jj < d; ++jj) {
                    double acc = 0.0;
                    for (int l = 0; l < d; ++l) acc += sc.at(jj, kk, l) * xi(l);
                    N(kk, jj) = acc;
                }
            const RMat stab = real_nullspace(N);
            double closure = 0.0;
            for (Eigen::Index a = 0; a < stab.cols(); ++a)
                for (Eigen::Index b = 0; b < stab.cols(); ++b) {
                    const RVec br = sc.bracket(stab.col(a), stab.col(b));
                    closure = std::max(
                        closure, membership_residual(to_complex(stab),
                                                     CVec(to_complex(RMat(br)).col(0))));
                }
            out.feed("stabilizer-closure", closure);
        }
    }
    return cfg.mutate ? "symmetrize-anchor" : "";
}

// ---------------------------------------------------------------- suite 7

inline std::string run_gl_orbits(const SuiteConfig& cfg, CheckSet& out) {
    // Corrupted variant: the first trace expression conjugates with g itself
    // instead of its inverse.
    Rng root(cfg.seed);
    for (int n : dims_or(cfg, {2, 3})) {
        for (int t = 0; t < cfg.trials; ++t) {
            Rng rng = root.fork(static_cast<std::uint64_t>(n * 100003 + t));
            const Mat g = Mat((0.5 * rng.cgaussian(n, n)).exp());
            const Mat A = rng.cgaussian(n, n);
            const Mat V1 = rng.cgaussian(n, n), V2 = rng.cgaussian(n, n);
            const OrbitTangent t1{Mat(V1 * g), Mat(V1 * A - A * V1)};
            const OrbitTangent t2{Mat(V2 * g), Mat(V2 * A - A * V2)};

            const Mat gfac = cfg.mutate ? g : Mat(g.inverse());
            const cxd e1 = (t1.gdot * gfac * t2.adot).trace();
            const cxd e2 = -(t2.gdot * g.inverse() * t1.adot).trace();
            out.feed("two-expression", rel(std::abs(e1 - e2), std::abs(e1) + std::abs(e2)));

            const double f12 = gl_orbit_form(g, A, t1, t2, cfg.tol);
            const double f21 = gl_orbit_form(g, A, t2, t1, cfg.tol);
            out.feed("antisymmetry", rel(std::abs(f12 + f21), std::abs(f12)));
            const double lie = (A * (V1 * V2 - V2 * V1)).trace().real();
            out.feed("bracket-identity", rel(std::abs(f12 - lie), std::abs(lie)));
        }
    }
    return cfg.mutate ? "missing-inverse" : "";
}

// ------------------------------------------------- operator suites (8-12)

inline std::vector<StarAlgebraSpec> algebra_list(const SuiteConfig& cfg,
                                                 std::vector<StarAlgebraSpec> fallback) {
    if (cfg.instance) {
        require_kind(*cfg.instance, "algebra-spec", cfg.suite);
        return {algebra_spec_from_json(*cfg.instance)};
    }
    if (!cfg.dims.empty()) {
        std::vector<StarAlgebraSpec> specs;
        for (int n : cfg.dims) specs.push_back(StarAlgebraSpec::full(n));
        return specs;
    }
    return fallback;
}

/// Random member of the algebra: independent Gaussian blocks.
inline Mat member_sample(const StarAlgebraSpec& spec, Rng& rng) {
    Mat x = Mat::Zero(spec.n, spec.n);
    for (int b = 0; b < spec.block_count(); ++b) {
        const int off = spec.block_offset(b);
        const int sz = spec.block_sizes[static_cast<size_t>(b)];
        x.block(off, off, sz, sz) = rng.cgaussian(sz, sz);
    }
    return x;
}

/// Member with per-block condition number close to the given target.
inline Mat graded_member_sample(const StarAlgebraSpec& spec, Rng& rng, double cond) {
    Mat x = Mat::Zero(spec.n, spec.n);
    for (int b = 0; b < spec.block_count(); ++b) {
        const int off = spec.block_offset(b);
        const int sz = spec.block_sizes[static_cast<size_t>(b)];
        Mat d = Mat::Zero(sz, sz);
        for (int i = 0; i < sz; ++i)
            d(i, i) = std::pow(cond, sz == 1 ? 0.0 : -double(i) / double(sz - 1));
        x.block(off, off, sz, sz) = rng.unitary(sz) * d * rng.unitary(sz);
    }
    return x;
}

inline std::string run_polar(const SuiteConfig& cfg, CheckSet& out) {
    // Corrupted variant: the reconstructed isometry drops the dyad carrying
    // the top singular value.
    Rng root(cfg.seed);
    std::uint64_t si = 0;
    for (const StarAlgebraSpec& spec : algebra_list(cfg, {StarAlgebraSpec::full(3)})) {
        ++si;
        for (int t = 0; t < cfg.trials; ++t) {
            Rng rng = root.fork(si * 1000003 + static_cast<std::uint64_t>(t));
            const double cond = std::pow(10.0, double(t % 9));
            const Mat x = graded_member_sample(spec, rng, cond);
            const OperatorElement e = polar_decompose(spec, x);
            if (!cfg.mutate) {
                out.feed("reconstruction", e.reconstruction_residual());
            } else {
                Eigen::JacobiSVD<Mat> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
                const auto& sv = svd.singularValues();
                const double cut = double(spec.n) * sv.maxCoeff() * 1e-12;
                Mat mask = Mat::Zero(spec.n, spec.n);
                for (int i = 1; i < spec.n; ++i)
                    if (sv(i) > cut) mask(i, i) = 1.0;
                const Mat u_mut = svd.matrixU() * mask * svd.matrixV().adjoint();
                out.feed("reconstruction",
                         rel(max_norm(Mat(u_mut * e.modulus - x)), max_norm(x)));
            }
            out.feed("isometry", e.isometry_residual());
            out.feed("projections", rel(max_norm(Mat(e.p * e.p - e.p)), max_norm(e.p)));
            out.feed("projections", rel(max_norm(Mat(e.q * e.q - e.q)), max_norm(e.q)));
            out.feed("projections", rel(max_norm(Mat(e.p - e.p.adjoint())), max_norm(e.p)));
            out.feed("block-membership", spec.membership(e.u));
            out.feed("block-membership", spec.membership(e.modulus));
            out.feed("block-membership", spec.membership(e.p));
            out.feed("block-membership", spec.membership(e.q));
        }
    }
    return cfg.mutate ? "drop-top-singular-value" : "";
}

/// Composable chain x: p1 -> p0, y: p2 -> p1, z: p3 -> p2 built from shared
/// block unitaries, with the first block forced rank-deficient.
struct OperatorChain {
    Mat x, y, z;
};

inline Mat block_unitary(const StarAlgebraSpec& spec, Rng& rng) {
    Mat u = Mat::Zero(spec.n, spec.n);
    for (int b = 0; b < spec.block_count(); ++b) {
        const int off = spec.block_offset(b);
        const int sz = spec.block_sizes[static_cast<size_t>(b)];
        u.block(off, off, sz, sz) = rng.unitary(sz);
    }
    return u;
}

inline OperatorChain composable_chain(const StarAlgebraSpec& spec, Rng& rng) {
    Mat P = Mat::Zero(spec.n, spec.n);
    for (int b = 0; b < spec.block_count(); ++b) {
        const int off = spec.block_offset(b);
        const int sz = spec.block_sizes[static_cast<size_t>(b)];
        const int r = (b == 0) ? std::max(1, sz - 1)
                               : static_cast<int>(rng.below(static_cast<std::uint64_t>(sz) + 1));
        for (int i = 0; i < r; ++i) P(off + i, off + i) = 1.0;
    }
    const Mat U = block_unitary(spec, rng), V = block_unitary(spec, rng);
    const Mat W = block_unitary(spec, rng), Z = block_unitary(spec, rng);
    Mat d1 = Mat::Zero(spec.n, spec.n), d2 = d1, d3 = d1;
    for (int i = 0; i < spec.n; ++i) {
        d1(i, i) = 0.5 + rng.uniform();
        d2(i, i) = 0.5 + rng.uniform();
        d3(i, i) = 0.5 + rng.uniform();
    }
    OperatorChain c;
    c.x = U * d1 * P * V.adjoint();
    c.y = V * P * d2 * W.adjoint();
    c.z = W * P * d3 * Z.adjoint();
    return c;
}

inline std::string run_vn_groupoid_axioms(const SuiteConfig& cfg, CheckSet& out) {
    // Corrupted variant: source and target projections are recomputed from
    // the isometry with its factors multiplied in swapped order.
    Rng root(cfg.seed);
    std::uint64_t si = 0;
    for (const StarAlgebraSpec& spec : algebra_list(cfg, {StarAlgebraSpec::full(3)})) {
        ++si;
        for (int t = 0; t < cfg.trials; ++t) {
            Rng rng = root.fork(si * 1000003 + static_cast<std::uint64_t>(t));
            const OperatorChain c = composable_chain(spec, rng);
            const OperatorElement X = polar_decompose(spec, c.x);
            const OperatorElement Y = polar_decompose(spec, c.y);
            const OperatorElement Z = polar_decompose(spec, c.z);

            Mat p_ref = X.p, q_ref = X.q;
            if (cfg.mutate) {
                Eigen::JacobiSVD<Mat> svd(c.x, Eigen::ComputeFullU | Eigen::ComputeFullV);
                const auto& sv = svd.singularValues();
                const double cut = double(spec.n) * sv.maxCoeff() * 1e-12;
                Mat mask = Mat::Zero(spec.n, spec.n);
                for (int i = 0; i < spec.n; ++i)
                    if (sv(i) > cut) mask(i, i) = 1.0;
                const Mat u_sw = svd.matrixV() * mask * svd.matrixU().adjoint();
                p_ref = u_sw.adjoint() * u_sw;
                q_ref = u_sw * u_sw.adjoint();
            }

            const OperatorElement iX = op_invert(X);
            out.feed("inverse-target",
                     rel(max_norm(Mat(op_multiply(X, iX).x - q_ref)), max_norm(q_ref)));
            out.feed("inverse-source",
                     rel(max_norm(Mat(op_multiply(iX, X).x - p_ref)), max_norm(p_ref)));
            out.feed("double-inverse",
                     rel(max_norm(Mat(op_invert(iX).x - X.x)), max_norm(X.x)));
            const OperatorElement XY = op_multiply(X, Y);
            const OperatorElement YZ = op_multiply(Y, Z);
            out.feed("associativity", rel(max_norm(Mat(op_multiply(XY, Z).x -
                                                       op_multiply(X, YZ).x)),
                                          max_norm(XY.x)));
            out.feed("coherence", rel(max_norm(Mat(XY.p - Y.p)), max_norm(Y.p)));
            out.feed("coherence", rel(max_norm(Mat(XY.q - X.q)), max_norm(X.q)));
            out.feed("unit-product",
                     rel(max_norm(Mat(op_multiply(polar_decompose(spec, X.q), X).x - X.x)),
                         max_norm(X.x)));
        }
    }
    return cfg.mutate ? "swap-isometry-order" : "";
}

inline std::vector<std::vector<int>> all_rank_vectors(const StarAlgebraSpec& spec) {
    std::vector<std::vector<int>> vecs{{}};
    for (int b = 0; b < spec.block_count(); ++b) {
        std::vector<std::vector<int>> next;
        for (const auto& v : vecs)
            for (int r = 0; r <= spec.block_sizes[static_cast<size_t>(b)]; ++r) {
                auto w = v;
                w.push_back(r);
                next.push_back(std::move(w));
            }
        vecs = std::move(next);
    }
    return vecs;
}

inline Mat projection_for_ranks(const StarAlgebraSpec& spec, const std::vector<int>& ranks) {
    Mat p = Mat::Zero(spec.n, spec.n);
    for (int b = 0; b < spec.block_count(); ++b) {
        const int off = spec.block_offset(b);
        for (int i = 0; i < ranks[static_cast<size_t>(b)]; ++i) p(off + i, off + i) = 1.0;
    }
    return p;
}

inline std::string run_mvn_orbits(const SuiteConfig& cfg, CheckSet& out) {
    // Corrupted variant: equivalence classes are keyed by total rank alone,
    // merging inequivalent projections across blocks.
    Rng root(cfg.seed);
    std::uint64_t si = 0;
    for (const StarAlgebraSpec& spec :
         algebra_list(cfg, {StarAlgebraSpec::full(3), StarAlgebraSpec(4, {2, 2})})) {
        ++si;
        const auto vectors = all_rank_vectors(spec);
        for (int t = 0; t < cfg.trials; ++t) {
            Rng rng = root.fork(si * 1000003 + static_cast<std::uint64_t>(t));
            std::vector<ProjectionElement> samples;
            std::vector<std::vector<int>> keys;
            for (const auto& rv : vectors) {
                const Mat p = projection_for_ranks(spec, rv);
                const Mat u = block_unitary(spec, rng);
                samples.emplace_back(spec, p);
                samples.emplace_back(spec, Mat(u * p * u.adjoint()));
                keys.push_back(rv);
                keys.push_back(rv);
            }

            // Partition by the configured key, then audit with the certified
            // pairwise equivalence test.
            std::vector<std::vector<size_t>> classes;
            std::vector<std::vector<int>> class_keys;
            for (size_t s = 0; s < samples.size(); ++s) {
                std::vector<int> key = keys[s];
                if (cfg.mutate) {
                    int total = 0;
                    for (int r : key) total += r;
                    key = {total};
                }
                bool placed = false;
                for (size_t cidx = 0; cidx < classes.size(); ++cidx)
                    if (class_keys[cidx] == key) {
                        classes[cidx].push_back(s);
                        placed = true;
                        break;
                    }
                if (!placed) {
                    classes.push_back({s});
                    class_keys.push_back(key);
                }
            }
            size_t total = 0;
            for (const auto& cls : classes) {
                total += cls.size();
                for (size_t a = 0; a < cls.size(); ++a)
                    for (size_t b = a + 1; b < cls.size(); ++b) {
                        const MvnResult r =
                            mvn_equivalent(spec, samples[cls[a]], samples[cls[b]]);
                        out.feed("within-class", r.equivalent ? 0.0 : 1.0);
                        if (r.equivalent) out.feed("witness-relations", r.witness_residual);
                    }
            }
            for (size_t a = 0; a < classes.size(); ++a)
                for (size_t b = a + 1; b < classes.size(); ++b) {
                    const MvnResult r =
                        mvn_equivalent(spec, samples[classes[a][0]], samples[classes[b][0]]);
                    out.feed("across-class", r.equivalent ? 1.0 : 0.0);
                }
            out.feed("partition-total", total == samples.size() ? 0.0 : 1.0);
        }
    }
    return cfg.mutate ? "total-rank-only" : "";
}

inline std::string run_schatten(const SuiteConfig& cfg, CheckSet& out) {
    // Corrupted variant: every norm is recomputed from eigenvalue moduli in
    // place of singular values. The monotone chain survives that corruption;
    // the two-norm trace formula does not (on non-normal samples).
    Rng root(cfg.seed);
    std::vector<Mat> extra;
    if (cfg.instance) {
        require_kind(*cfg.instance, "operator-sample", cfg.suite);
        extra.push_back(operator_sample_from_json(*cfg.instance));
    }
    for (int n : dims_or(cfg, {3})) {
        for (int t = 0; t < cfg.trials; ++t) {
            Rng rng = root.fork(static_cast<std::uint64_t>(n * 100003 + t));
            std::vector<Mat> batch{rng.cgaussian(n, n)};
            if (t == 0)
                for (const Mat& m : extra) batch.push_back(m);
            for (const Mat& x : batch) {
                double n1, np, n2, nq, ninf;
                if (!cfg.mutate) {
                    const NormChainReport rep = norm_chain_report(x);
                    n1 = rep.norm_1;
                    np = rep.norm_p;
                    n2 = rep.norm_2;
                    nq = rep.norm_q;
                    ninf = rep.norm_inf;
                } else {
                    Eigen::ComplexEigenSolver<Mat> es(x, false);
                    const RVec moduli = es.eigenvalues().cwiseAbs();
                    const auto power_norm = [&moduli](double pw) {
                        double sum = 0.0;
                        for (Eigen::Index i = 0; i < moduli.size(); ++i)
                            sum += std::pow(moduli(i), pw);
                        return std::pow(sum, 1.0 / pw);
                    };
                    n1 = power_norm(1.0);
                    np = power_norm(1.5);
                    n2 = power_norm(2.0);
                    nq = power_norm(4.0);
                    ninf = moduli.maxCoeff();
                }
                const double scale = 1.0 + n1;
                out.feed("chain-monotone",
                         std::max({np - n1, n2 - np, nq - n2, ninf - nq, 0.0}) / scale);
                out.feed("trace-bound", std::max(0.0, std::abs(x.trace()) - n1) / scale);
                out.feed("two-norm-trace-formula",
                         rel(std::abs(n2 * n2 - (x * x.adjoint()).trace().real()),
                             n2 * n2));
            }
            const Mat v = rng.cgaussian(n, 1), w = rng.cgaussian(1, n);
            const Mat r1 = v * w;
            const double s1 = schatten_norm(r1, kSchattenInf);
            double collapse = 0.0;
            for (double pw : {1.0, 1.5, 2.0, 4.0})
                collapse = std::max(collapse, rel(std::abs(schatten_norm(r1, pw) - s1), s1));
            out.feed("rank-one-collapse", collapse);
        }
    }
    return cfg.mutate ? "eigenvalue-moduli" : "";
}

/// Classification residuals of the pair-multiplication graph, with the sign
/// of the third factor's structure selectable (the honest check conjugates
/// it; the corrupted variant forgets to).
inline SubspaceClass pair_graph_classification(const StarAlgebraSpec& spec, const Mat& p0,
                                               int third_sign, double tol) {
    const RMat ideal = right_ideal_basis(spec, p0);
    const int m = static_cast<int>(ideal.cols());
    if (m == 0) return SubspaceClass{};
    RMat P = RMat::Zero(2 * m, 2 * m);
    P.topRightCorner(m, m) = RMat::Identity(m, m);
    P.bottomLeftCorner(m, m) = -RMat::Identity(m, m);
    const int gdim = 4 * m;
    RMat PG = RMat::Zero(gdim, gdim);
    PG.topLeftCorner(2 * m, 2 * m) = P;
    PG.bottomRightCorner(2 * m, 2 * m) = -P;
    RMat ambient = RMat::Zero(3 * gdim, 3 * gdim);
    ambient.block(0, 0, gdim, gdim) = PG;
    ambient.block(gdim, gdim, gdim, gdim) = PG;
    ambient.block(2 * gdim, 2 * gdim, gdim, gdim) = double(third_sign) * PG;
    RMat graph = RMat::Zero(3 * gdim, 6 * m);
    graph.block(0, 0, 2 * m, 2 * m).setIdentity();
    graph.block(2 * gdim, 0, 2 * m, 2 * m).setIdentity();
    graph.block(2 * m, 2 * m, 2 * m, 2 * m).setIdentity();
    graph.block(gdim, 2 * m, 2 * m, 2 * m).setIdentity();
    graph.block(gdim + 2 * m, 4 * m, 2 * m, 2 * m).setIdentity();
    graph.block(2 * gdim + 2 * m, 4 * m, 2 * m, 2 * m).setIdentity();
    const LinearPoissonSpace big(3 * gdim, Mat::Identity(3 * gdim, 3 * gdim),
                                 to_complex(ambient), tol);
    return classify_subspace(big, Subspace(3 * gdim, to_complex(graph), tol));
}

inline std::string run_pair_subpoisson(const SuiteConfig& cfg, CheckSet& out) {
    Rng root(cfg.seed);
    std::uint64_t si = 0;
    for (const StarAlgebraSpec& spec : algebra_list(cfg, {StarAlgebraSpec::full(2)})) {
        ++si;
        const ProjectionElement p0(spec, spec.unit());
        const PairSubPoissonReport rep =
            pair_groupoid_subpoisson_check(spec, p0, cfg.trials, root.fork(si).next_u64());
        out.feed("anchor-diagram", rep.anchor_diagram_residual);
        if (!cfg.mutate) {
            out.feed("graph-coisotropic", std::max(rep.coisotropy_residual,
                                                   rep.graph_coisotropic ? 0.0 : 1.0));
            out.feed("graph-lagrangian",
                     std::max(rep.lagrangian_residual, rep.graph_lagrangian ? 0.0 : 1.0));
        } else {
            const SubspaceClass cls = pair_graph_classification(spec, p0.p, +1, cfg.tol);
            out.feed("graph-coisotropic", cls.coisotropy_residual);
            out.feed("graph-lagrangian", cls.lagrangian_residual);
        }
    }
    return cfg.mutate ? "unflipped-product-sign" : "";
}

}  // namespace detail

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "unitary-multiplicative", "unitary-cocycle", "tower-stability",
        "cotangent-axioms",       "cotangent-symplectic", "kks",
        "gl-orbits",              "polar",          "vn-groupoid-axioms",
        "mvn-orbits",             "schatten",       "pair-subpoisson"};
    return names;
}

inline SuiteReport run_suite(const SuiteConfig& cfg);

namespace detail {

inline SuiteReport run_single(const SuiteConfig& cfg) {
    CheckSet set;
    std::string mutation;
    if (cfg.suite == "unitary-multiplicative") mutation = run_unitary_multiplicative(cfg, set);
    else if (cfg.suite == "unitary-cocycle") mutation = run_unitary_cocycle(cfg, set);
    else if (cfg.suite == "tower-stability") mutation = run_tower_stability(cfg, set);
    else if (cfg.suite == "cotangent-axioms") mutation = run_cotangent_axioms(cfg, set);
    else if (cfg.suite == "cotangent-symplectic") mutation = run_cotangent_symplectic(cfg, set);
    else if (cfg.suite == "kks") mutation = run_kks(cfg, set);
    else if (cfg.suite == "gl-orbits") mutation = run_gl_orbits(cfg, set);
    else if (cfg.suite == "polar") mutation = run_polar(cfg, set);
    else if (cfg.suite == "vn-groupoid-axioms") mutation = run_vn_groupoid_axioms(cfg, set);
    else if (cfg.suite == "mvn-orbits") mutation = run_mvn_orbits(cfg, set);
    else if (cfg.suite == "schatten") mutation = run_schatten(cfg, set);
    else if (cfg.suite == "pair-subpoisson") mutation = run_pair_subpoisson(cfg, set);
    else
        throw std::invalid_argument("unknown suite '" + cfg.suite + "'");
    SuiteReport rep;
    rep.suite = cfg.suite;
    rep.seed = cfg.seed;
    rep.trials = cfg.trials;
    rep.tol = cfg.tol;
    rep.mutation = std::move(mutation);
    rep.per_check = std::move(set.checks);
    return rep;
}

inline void finalize(SuiteReport& rep) {
    rep.failures = 0;
    rep.max_residual = 0.0;
    for (CheckResult& c : rep.per_check) {
        c.pass = c.residual <= rep.tol;
        if (!c.pass) ++rep.failures;
        rep.max_residual = std::max(rep.max_residual, c.residual);
    }
}

}  // namespace detail

/**
 * Runs one named suite (or "all") and returns the aggregated report. Unknown
 * suite names, nonpositive trial counts/tolerances, and instance payloads of
 * the wrong kind raise std::invalid_argument.
 */
inline SuiteReport run_suite(const SuiteConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    if (cfg.suite == "all") {
        rep.suite = "all";
        rep.seed = cfg.seed;
        rep.trials = cfg.trials;
        rep.tol = cfg.tol;
        if (cfg.mutate) rep.mutation = "documented-per-suite";
        Rng root(cfg.seed);
        std::uint64_t i = 0;
        for (const std::string& name : suite_names()) {
            SuiteConfig sub = cfg;
            sub.suite = name;
            sub.instance.reset();  // instance payloads bind to one named suite
            sub.seed = root.fork(++i).next_u64();
            SuiteReport one = detail::run_single(sub);
            for (CheckResult& c : one.per_check) {
                c.name = name + "/" + c.name;
                rep.per_check.push_back(std::move(c));
            }
        }
    } else {
        rep = detail::run_single(cfg);
    }
    detail::finalize(rep);
    rep.wall_time_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    return rep;
}

inline Json suite_report_to_json(const SuiteReport& rep) {
    Json checks = Json::array();
    for (const CheckResult& c : rep.per_check)
        checks.push_back(Json{{"name", c.name}, {"residual", c.residual}, {"pass", c.pass}});
    return Json{{"schema", 1},
                {"suite", rep.suite},
                {"seed", rep.seed},
                {"trials", rep.trials},
                {"tol", rep.tol},
                {"mutation", rep.mutation},
                {"failures", rep.failures},
                {"max_residual", rep.max_residual},
                {"wall_time_ms", rep.wall_time_ms},
                {"per_check", std::move(checks)}};
}

inline std::string suite_report_to_text(const SuiteReport& rep) {
    std::string out = "suite " + rep.suite + "  seed " + std::to_string(rep.seed) + "  trials " +
                      std::to_string(rep.trials) + "  tol " + std::to_string(rep.tol);
    if (!rep.mutation.empty()) out += "  [corrupted: " + rep.mutation + "]";
    out += "\n";
    for (const CheckResult& c : rep.per_check) {
        char line[160];
        std::snprintf(line, sizeof(line), "  %-44s %11.3e  %s\n", c.name.c_str(), c.residual,
                      c.pass ? "pass" : "FAIL");
        out += line;
    }
    char tail[120];
    std::snprintf(tail, sizeof(tail), "failures %d  max_residual %.3e  wall %.1f ms\n",
                  rep.failures, rep.max_residual, rep.wall_time_ms);
    out += tail;
    return out;
}

/**
 * Deterministic instance generator for the CLI: the payload is a pure
 * function of (kind, dim, seed), so repeated generation is byte-identical.
 */
inline Json gen_instance(const std::string& kind, int dim, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("gen_instance: dim must be >= 1");
    Rng rng(seed);
    if (kind == "subspace") {
        const Subspace s(dim, rng.cgaussian(dim, (dim + 1) / 2));
        return subspace_to_json(s);
    }
    if (kind == "poisson-space") {
        const RMat g = rng.gaussian(dim, dim);
        const RMat w = g - g.transpose();
        const LinearPoissonSpace S(dim, Mat::Identity(dim, dim), to_complex(w));
        return poisson_space_to_json(S);
    }
    if (kind == "structure-constants") {
        if (dim == 3) return structure_constants_to_json(groups::so3().constants);
        const int n = static_cast<int>(std::lround(std::sqrt(double(dim))));
        if (n * n == dim) return structure_constants_to_json(groups::unitary(n).constants);
        throw std::invalid_argument(
            "gen_instance: structure-constants supports dim 3 or a perfect square");
    }
    if (kind == "group-spec") return group_spec_to_json(groups::unitary(dim));
    if (kind == "algebra-spec") {
        std::vector<int> blocks;
        int target = dim - (dim >= 3 ? 1 : 0);  // leave a corner when possible
        while (target > 0) {
            const int s = 1 + static_cast<int>(rng.below(
                                  static_cast<std::uint64_t>(std::min(target, 3))));
            blocks.push_back(s);
            target -= s;
        }
        return algebra_spec_to_json(StarAlgebraSpec(dim, blocks));
    }
    if (kind == "operator-sample") return operator_sample_to_json(rng.cgaussian(dim, dim));
    throw std::invalid_argument("gen_instance: unknown kind '" + kind + "'");
}

}  // namespace pgl
