/**
 * @file test_acceptance.cpp
 * @brief Acceptance gate: ten end-to-end criteria over the whole library,
 *        each with pinned tolerances and a wall-clock budget, printing one
 *        pass/fail line per criterion. Exit code 0 iff every line passes.
 */
#include "pgl/generators.hpp"
#include "pgl/suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

using namespace pgl;

namespace {

std::string num(double v) {
    char b[40];
    std::snprintf(b, sizeof(b), "%.2e", v);
    return b;
}

struct Outcome {
    bool ok = true;
    std::string detail;
};

// ------------------------------------------------------------- criterion 1

Outcome symplectic_biduality() {
    Rng root(11);
    double worst = 0.0;
    const int dims[4] = {2, 4, 6, 8};
    for (int t = 0; t < 200; ++t) {
        Rng r = root.fork(static_cast<std::uint64_t>(t));
        const int d = dims[t % 4];
        const LinearPoissonSpace S = random_symplectic_space(r, d);
        const int m = 1 + static_cast<int>(r.below(static_cast<std::uint64_t>(d - 1)));
        const Subspace F = random_subspace(r, d, m);
        const Subspace FF = perp_P(S, perp_P(S, F));
        worst = std::max(worst, span_distance(FF.span, F.span));
    }
    Outcome out;
    out.ok = worst <= 1e-9;
    out.detail = "200 double-orthogonal round trips, worst span distance " + num(worst);
    return out;
}

// ------------------------------------------------------------- criterion 2

Outcome morphism_two_paths() {
    Rng root(22);
    int disagreements = 0;
    int label_misses = 0;
    for (int t = 0; t < 200; ++t) {
        Rng r = root.fork(static_cast<std::uint64_t>(t));
        const int d1 = 2 + static_cast<int>(r.below(4));
        const int d2 = 2 + static_cast<int>(r.below(4));
        const bool make_good = t < 100;
        const MorphismInstance inst = make_good ? random_morphism_instance(r, d1, d2)
                                                : random_non_morphism_instance(r, d1, d2);
        const MorphismReport rep =
            is_poisson_morphism(inst.source, inst.target, to_complex(inst.phi));

        // Independent path: bracket comparison of linear functionals through
        // the ambient bivectors.
        const Mat Pi1 = inst.source.anchor * inst.source.flat_basis;
        const Mat Pi2 = inst.target.anchor * inst.target.flat_basis;
        const Mat phi = to_complex(inst.phi);
        double worst = 0.0;
        for (int probe = 0; probe < 12; ++probe) {
            const CVec a = to_complex(r.gaussian(d2, 1)).col(0);
            const CVec b = to_complex(r.gaussian(d2, 1)).col(0);
            const cxd lhs = (a.transpose() * phi * Pi1 * phi.transpose() * b)(0, 0);
            const cxd rhs = (a.transpose() * Pi2 * b)(0, 0);
            worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
        }
        const bool bracket_path = worst <= 1e-9;
        if (rep.morphism != bracket_path) ++disagreements;
        if (rep.morphism != make_good) ++label_misses;
    }
    Outcome out;
    out.ok = disagreements == 0 && label_misses == 0;
    out.detail = "100 morphisms + 100 non-morphisms, " + std::to_string(disagreements) +
                 " path disagreements, " + std::to_string(label_misses) + " label misses";
    return out;
}

// ------------------------------------------------------------- criterion 3

LinearRelation product_relation(const Subspace& C1, const Subspace& C2) {
    Mat cols = Mat::Zero(C1.ambient_dim + C2.ambient_dim, C1.dim() + C2.dim());
    cols.topLeftCorner(C1.ambient_dim, C1.dim()) = C1.span;
    cols.bottomRightCorner(C2.ambient_dim, C2.dim()) = C2.span;
    return LinearRelation(C1.ambient_dim, C2.ambient_dim,
                          Subspace(C1.ambient_dim + C2.ambient_dim, cols));
}

struct PushedMorphism {
    LinearPoissonSpace target;
    Mat phi;
};

/// Random linear map out of S with the push-forward structure on the target.
PushedMorphism push_forward(Rng& r, const LinearPoissonSpace& S, int d2) {
    const Mat Pi = S.anchor * S.flat_basis;
    const Mat phi = to_complex(r.gaussian(d2, S.dim_E));
    const Mat Pi2 = phi * Pi * phi.transpose();
    const Mat B2 = to_complex(r.orthogonal(d2));
    return {LinearPoissonSpace(d2, B2, Mat(Pi2 * B2.transpose())), phi};
}

Outcome relation_composition() {
    Rng root(33);
    double worst = 0.0;
    int composed = 0;
    for (int t = 0; t < 100; ++t) {
        Rng r = root.fork(static_cast<std::uint64_t>(t));
        const int d1 = 2 + static_cast<int>(r.below(3));
        const int d2 = 2 + static_cast<int>(r.below(3));
        const int d3 = 2 + static_cast<int>(r.below(3));
        const LinearPoissonSpace S1 = random_full_dual_space(r, d1).space;

        // First leg: either a morphism graph (target carries the push-forward
        // structure) or a product of coisotropic subspaces.
        LinearPoissonSpace S2 = random_full_dual_space(r, d2).space;
        LinearRelation R1;
        if (r.below(2) == 0) {
            const PushedMorphism pm = push_forward(r, S1, d2);
            S2 = pm.target;
            R1 = LinearRelation::graph_of(pm.phi);
        } else {
            R1 = product_relation(random_coisotropic(r, S1), random_coisotropic(r, S2));
        }

        LinearPoissonSpace S3 = random_full_dual_space(r, d3).space;
        LinearRelation R2;
        if (r.below(2) == 0) {
            const PushedMorphism pm = push_forward(r, S2, d3);
            S3 = pm.target;
            R2 = LinearRelation::graph_of(pm.phi);
        } else {
            R2 = product_relation(random_coisotropic(r, S2), random_coisotropic(r, S3));
        }

        const SubspaceClass in1 = classify_subspace(product_space(S1, S2, -1), R1.graph);
        const SubspaceClass in2 = classify_subspace(product_space(S2, S3, -1), R2.graph);
        if (!in1.coisotropic || !in2.coisotropic) {
            Outcome out;
            out.ok = false;
            out.detail = "input relation failed its own certificate at trial " +
                         std::to_string(t);
            return out;
        }

        const LinearRelation comp = relation_compose(R1, R2);
        const SubspaceClass cls = classify_subspace(product_space(S1, S3, -1), comp.graph);
        worst = std::max(worst, cls.coisotropy_residual);
        if (!cls.coisotropic) {
            Outcome out;
            out.ok = false;
            out.detail = "composition left the certified class at trial " + std::to_string(t) +
                         ", residual " + num(cls.coisotropy_residual);
            return out;
        }
        ++composed;
    }
    Outcome out;
    out.detail = std::to_string(composed) +
                 " compositions certified coisotropic, worst residual " + num(worst);
    return out;
}

// ------------------------------------------------------------- criterion 4

std::pair<double, double> bivector_defects(const BivectorField& W, Rng& r) {
    double jac = 0.0;
    double sch = 0.0;
    const int d = W.dim;
    for (int pt = 0; pt < 5; ++pt) {
        const RVec x = r.gaussian(d, 1).col(0);
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                for (int k = j + 1; k < d; ++k) {
                    const ScalarField f = ScalarField::coordinate(d, i);
                    const ScalarField g = ScalarField::coordinate(d, j);
                    const ScalarField h = ScalarField::coordinate(d, k);
                    jac = std::max(jac, std::abs(jacobiator(W, f, g, h, x)));
                    sch = std::max(
                        sch, std::abs(schouten_residual(W, OneFormField::differential(f),
                                                        OneFormField::differential(g),
                                                        OneFormField::differential(h), x)));
                }
    }
    return {jac, sch};
}

Outcome jacobi_schouten_verdicts() {
    Rng root(44);
    double worst_poisson = 0.0;
    double least_defect = kSchattenInf;
    int agreements = 0;
    for (int t = 0; t < 20; ++t) {
        Rng r = root.fork(static_cast<std::uint64_t>(t));
        const bool poisson = t < 10;
        const int d = poisson ? 3 + (t % 4) : 3 + (t % 2);
        const BivectorField W =
            poisson ? random_poisson_bivector(r, d) : random_non_poisson_bivector(r, d, 0.1);
        const auto [jac, sch] = bivector_defects(W, r);
        const bool verdict_jac = jac <= 1e-9;
        const bool verdict_sch = sch <= 1e-9;
        if (verdict_jac == verdict_sch) ++agreements;
        if (poisson) {
            worst_poisson = std::max({worst_poisson, jac, sch});
        } else {
            least_defect = std::min({least_defect, jac, sch});
        }
    }
    Outcome out;
    out.ok = agreements == 20 && worst_poisson <= 1e-9 && least_defect >= 1e-3;
    out.detail = std::to_string(agreements) +
                 "/20 verdict agreements; worst certified defect " + num(worst_poisson) +
                 ", least corrupted defect " + num(least_defect);
    return out;
}

// ------------------------------------------------------------- criterion 5

Outcome unitary_structure() {
    Rng root(55);
    Outcome out;

    double worst_mult = 0.0;
    for (int t = 0; t < 100; ++t) {
        Rng r = root.fork(1000 + static_cast<std::uint64_t>(t));
        const GroupElement g(r.unitary(3)), h(r.unitary(3));
        const AlgebraElement a1 = AlgebraElement::borel_side(detail::random_borel(3, r));
        const AlgebraElement a2 = AlgebraElement::borel_side(detail::random_borel(3, r));
        worst_mult = std::max(worst_mult, multiplicativity_residual(g, h, a1, a2));
    }

    double worst_cocycle = 0.0;
    {
        const std::vector<Mat> ub = unitary_basis(2);
        const std::vector<Mat> bb = borel_basis(2);
        for (const Mat& x : ub)
            for (const Mat& y : ub)
                for (const Mat& a : bb)
                    for (const Mat& b : bb)
                        worst_cocycle = std::max(
                            worst_cocycle,
                            cocycle_algebra_residual(AlgebraElement::unitary_side(x),
                                                     AlgebraElement::unitary_side(y),
                                                     AlgebraElement::borel_side(a),
                                                     AlgebraElement::borel_side(b)));
    }

    double worst_jacobi = 0.0;
    for (int n : {2, 3}) {
        for (int t = 0; t < 50; ++t) {
            Rng r = root.fork(static_cast<std::uint64_t>(n) * 100000 +
                              static_cast<std::uint64_t>(t));
            const AlgebraElement a1 = AlgebraElement::borel_side(detail::random_borel(n, r));
            const AlgebraElement a2 = AlgebraElement::borel_side(detail::random_borel(n, r));
            const AlgebraElement a3 = AlgebraElement::borel_side(detail::random_borel(n, r));
            const auto db = [](const AlgebraElement& u, const AlgebraElement& v) {
                return derived_bracket(u, v).element;
            };
            const Mat jac = db(db(a1, a2), a3).mat + db(db(a2, a3), a1).mat +
                            db(db(a3, a1), a2).mat;
            const double scale =
                std::max({max_norm(a1.mat), max_norm(a2.mat), max_norm(a3.mat)});
            worst_jacobi = std::max(worst_jacobi, rel(max_norm(jac), scale * scale * scale));
        }
    }

    bool identity_exact = true;
    for (int n : {2, 3}) {
        const GroupElement e = GroupElement::identity(n);
        const std::vector<Mat> bb = borel_basis(n);
        for (const Mat& a : bb)
            for (const Mat& b : bb)
                identity_exact =
                    identity_exact && lambda_R(e, AlgebraElement::borel_side(a),
                                               AlgebraElement::borel_side(b)) == 0.0;
    }

    out.ok = worst_mult <= 1e-9 && worst_cocycle <= 1e-8 && worst_jacobi <= 1e-7 &&
             identity_exact;
    out.detail = "multiplicativity " + num(worst_mult) + ", cocycle (256 tuples) " +
                 num(worst_cocycle) + ", derived jacobi " + num(worst_jacobi) +
                 ", identity " + (identity_exact ? "exactly zero" : "NONZERO");
    return out;
}

// ------------------------------------------------------------- criterion 6

Outcome cotangent_groupoid() {
    Outcome out;
    double worst = 0.0;
    int failures = 0;
    for (const char* suite : {"cotangent-axioms", "cotangent-symplectic"}) {
        SuiteConfig cfg;
        cfg.suite = suite;
        cfg.trials = 100;
        cfg.seed = 66;
        cfg.tol = 1e-8;
        const SuiteReport rep = run_suite(cfg);
        failures += rep.failures;
        worst = std::max(worst, rep.max_residual);
    }
    out.ok = failures == 0 && worst <= 1e-8;
    out.detail = "both suites on the two default groups at 100 trials, " +
                 std::to_string(failures) + " failures, worst residual " + num(worst);
    return out;
}

// ------------------------------------------------------------- criterion 7

Mat jordan_orbit_point(int n, Rng& r) {
    Mat J = Mat::Zero(n, n);
    int pos = 0;
    while (pos < n) {
        const int b = 1 + static_cast<int>(r.below(static_cast<std::uint64_t>(n - pos)));
        const cxd lam = r.cnormal();
        for (int i = 0; i < b; ++i) {
            J(pos + i, pos + i) = lam;
            if (i + 1 < b) J(pos + i, pos + i + 1) = cxd(1.0, 0.0);
        }
        pos += b;
    }
    for (int attempt = 0; attempt < 64; ++attempt) {
        const Mat T = r.cgaussian(n, n);
        Eigen::JacobiSVD<Mat> svd(T);
        if (svd.singularValues()(n - 1) > 1e-2 * svd.singularValues()(0))
            return T * J * T.inverse();
    }
    throw std::runtime_error("jordan_orbit_point: conditioning rejection failed");
}

Outcome kks_and_orbits() {
    Rng root(77);
    Outcome out;

    double worst_schouten = 0.0;
    double worst_closure = 0.0;
    bool stabilizer_dims_ok = true;
    std::uint64_t gi = 0;
    for (const MatrixLieGroupSpec& G : {groups::so3(), groups::unitary(2)}) {
        ++gi;
        const int d = G.dim();
        const BivectorField W = kks_bivector(G);
        // Generic regular elements: the axis line for so(3), the maximal
        // torus for u(2).
        const int expected_stab = (G.dim() == 3) ? 1 : 2;
        for (int t = 0; t < 30; ++t) {
            Rng r = root.fork(gi * 1000 + static_cast<std::uint64_t>(t));
            const RVec x = r.gaussian(d, 1).col(0);
            const int i = static_cast<int>(r.below(static_cast<std::uint64_t>(d)));
            const int j = static_cast<int>(r.below(static_cast<std::uint64_t>(d)));
            const int k = static_cast<int>(r.below(static_cast<std::uint64_t>(d)));
            const OneFormField s1 =
                OneFormField::differential(ScalarField::coordinate(d, i));
            const OneFormField s2 =
                OneFormField::differential(ScalarField::coordinate(d, j));
            const OneFormField s3 =
                OneFormField::differential(ScalarField::coordinate(d, k));
            worst_schouten =
                std::max(worst_schouten, std::abs(schouten_residual(W, s1, s2, s3, x)));

            const RVec xi = r.gaussian(d, 1).col(0);
            const StabilizerResult stab = stabilizer_algebra(G, xi);
            worst_closure = std::max(worst_closure, stab.closure_residual);
            stabilizer_dims_ok = stabilizer_dims_ok && stab.space.dim() == expected_stab;
        }
    }

    double worst_two_expr = 0.0;
    for (int n : {2, 3}) {
        for (int t = 0; t < 30; ++t) {
            Rng r = root.fork(static_cast<std::uint64_t>(n) * 50000 +
                              static_cast<std::uint64_t>(t));
            const Mat A = jordan_orbit_point(n, r);
            const Mat g = Mat((0.5 * r.cgaussian(n, n)).exp());
            const Mat V1 = r.cgaussian(n, n), V2 = r.cgaussian(n, n);
            const OrbitTangent t1{Mat(V1 * g), Mat(V1 * A - A * V1)};
            const OrbitTangent t2{Mat(V2 * g), Mat(V2 * A - A * V2)};
            const cxd e1 = (t1.gdot * g.inverse() * t2.adot).trace();
            const cxd e2 = -(t2.gdot * g.inverse() * t1.adot).trace();
            worst_two_expr =
                std::max(worst_two_expr, rel(std::abs(e1 - e2), std::abs(e1) + std::abs(e2)));
        }
    }

    out.ok = worst_schouten <= 1e-9 && worst_closure <= 1e-8 && stabilizer_dims_ok &&
             worst_two_expr <= 1e-9;
    out.detail = "schouten " + num(worst_schouten) + ", stabilizer closure " +
                 num(worst_closure) + (stabilizer_dims_ok ? "" : " (wrong dimension)") +
                 ", orbit two-expression " + num(worst_two_expr);
    return out;
}

// ------------------------------------------------------------- criterion 8

Mat ranked_sample(const StarAlgebraSpec& spec, const std::vector<int>& ranks, Rng& r) {
    Mat x = Mat::Zero(spec.n, spec.n);
    for (int b = 0; b < spec.block_count(); ++b) {
        const int s = spec.block_sizes[static_cast<size_t>(b)];
        const int off = spec.block_offset(b);
        if (ranks[static_cast<size_t>(b)] == 0) continue;
        const Mat A = r.cgaussian(s, s);
        Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
        Mat d = Mat::Zero(s, s);
        for (int i = 0; i < ranks[static_cast<size_t>(b)]; ++i)
            d(i, i) = cxd(svd.singularValues()(i), 0.0);
        x.block(off, off, s, s) = svd.matrixU() * d * svd.matrixV().adjoint();
    }
    return x;
}

Outcome polar_partition_norms() {
    Rng root(88);
    Outcome out;

    double worst_polar = 0.0;
    double worst_trace_gap = 0.0;
    bool chains_ok = true;
    for (int t = 0; t < 200; ++t) {
        Rng r = root.fork(static_cast<std::uint64_t>(t));
        const StarAlgebraSpec spec = StarAlgebraSpec::full(2 + t % 3);
        const double cond = std::pow(10.0, t % 9);
        const Mat x = detail::graded_member_sample(spec, r, cond);
        const OperatorElement e = polar_decompose(spec, x);
        worst_polar =
            std::max({worst_polar, e.reconstruction_residual(), e.isometry_residual()});

        const NormChainReport ncr = norm_chain_report(x);
        chains_ok = chains_ok && ncr.chain_ok;
        worst_trace_gap = std::max(
            worst_trace_gap, (ncr.trace_abs - ncr.norm_1) / (1.0 + ncr.norm_1));
    }

    SuiteConfig cfg;
    cfg.suite = "vn-groupoid-axioms";
    cfg.trials = 50;
    cfg.seed = 88;
    cfg.tol = 1e-9;
    const SuiteReport axioms = run_suite(cfg);

    bool partitions_ok = true;
    double worst_witness = 0.0;
    const std::vector<StarAlgebraSpec> specs = {
        StarAlgebraSpec::full(1), StarAlgebraSpec::full(2), StarAlgebraSpec::full(3),
        StarAlgebraSpec::full(4), StarAlgebraSpec(4, {2, 2})};
    std::uint64_t si = 0;
    for (const StarAlgebraSpec& spec : specs) {
        ++si;
        Rng r = root.fork(700000 + si);
        const auto vectors = detail::all_rank_vectors(spec);
        std::vector<OperatorElement> samples;
        for (const auto& rv : vectors) {
            samples.push_back(polar_decompose(spec, ranked_sample(spec, rv, r)));
            samples.push_back(polar_decompose(spec, ranked_sample(spec, rv, r)));
        }
        const PartitionReport rep = orbit_partition(spec, samples);
        partitions_ok = partitions_ok && rep.within_classes_equivalent &&
                        rep.across_classes_distinct &&
                        rep.classes.size() == vectors.size();
        worst_witness = std::max(worst_witness, rep.worst_witness_residual);
    }

    out.ok = worst_polar <= 1e-12 && axioms.failures == 0 && partitions_ok && chains_ok &&
             worst_trace_gap <= 1e-9 && worst_witness <= 1e-9;
    out.detail = "200 graded polar factorizations worst " + num(worst_polar) + "; axioms " +
                 std::to_string(axioms.failures) + " failures; partitions " +
                 (partitions_ok ? "exhaustive" : "BROKEN") + ", worst witness " +
                 num(worst_witness) + "; norm chains " + (chains_ok ? "held" : "VIOLATED");
    return out;
}

// ------------------------------------------------------------- criterion 9

Outcome tower_stability() {
    Rng root(99);
    double worst = 0.0;
    double largest = 0.0;
    for (int t = 0; t < 50; ++t) {
        Rng r = root.fork(static_cast<std::uint64_t>(t));
        const GroupElement base(r.unitary(2));
        const TowerElement elem = TowerElement::group(base);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const TowerScalarField f = entry_field(i, j, false);
                const TowerScalarField g = entry_field(j, i, true);
                const double b2 = tower_bracket(f, g, elem, 2);
                largest = std::max(largest, std::abs(b2));
                for (int level = 3; level <= 4; ++level) {
                    const double bl = tower_bracket(f, g, elem, level);
                    worst = std::max(worst, rel(std::abs(bl - b2), std::abs(b2)));
                }
            }
    }
    Outcome out;
    out.ok = worst <= 1e-10 && largest > 1e-3;
    out.detail = "50 instances promoted twice, worst level drift " + num(worst) +
                 ", largest base bracket " + num(largest);
    return out;
}

// ------------------------------------------------------------ criterion 10

Outcome corrupted_variants() {
    Outcome out;
    int tripped = 0;
    double least_trip = kSchattenInf;
    std::string quiet;
    for (const std::string& name : suite_names()) {
        SuiteConfig cfg;
        cfg.suite = name;
        cfg.trials = 20;
        cfg.seed = 1010;
        cfg.mutate = true;
        const SuiteReport rep = run_suite(cfg);
        double worst_fail = 0.0;
        for (const CheckResult& c : rep.per_check)
            if (!c.pass) worst_fail = std::max(worst_fail, c.residual);
        if (rep.failures >= 1 && worst_fail >= 1e-3) {
            ++tripped;
            least_trip = std::min(least_trip, worst_fail);
        } else if (quiet.empty()) {
            quiet = name;
        }
    }
    out.ok = tripped == 12;
    out.detail = std::to_string(tripped) + "/12 corrupted variants tripped a check";
    if (out.ok)
        out.detail += ", smallest tripping residual " + num(least_trip);
    else
        out.detail += "; first quiet suite: " + quiet;
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        double budget_s;  // 0 = no wall-clock bound
        std::function<Outcome()> body;
    };
    const std::vector<Criterion> criteria = {
        {"symplectic-biduality", 5.0, symplectic_biduality},
        {"morphism-two-paths", 5.0, morphism_two_paths},
        {"relation-composition", 10.0, relation_composition},
        {"jacobi-schouten-verdicts", 10.0, jacobi_schouten_verdicts},
        {"unitary-structure", 30.0, unitary_structure},
        {"cotangent-groupoid", 60.0, cotangent_groupoid},
        {"kks-and-orbits", 20.0, kks_and_orbits},
        {"polar-partition-norms", 20.0, polar_partition_norms},
        {"tower-stability", 10.0, tower_stability},
        {"corrupted-variants", 0.0, corrupted_variants},
    };

    bool all_ok = true;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].body();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool within = criteria[i].budget_s == 0.0 || secs <= criteria[i].budget_s;
        const bool pass = o.ok && within;
        std::printf("criterion %02zu %s  %-26s %6.2fs  %s%s\n", i + 1,
                    pass ? "PASS" : "FAIL", criteria[i].label, secs, o.detail.c_str(),
                    within ? "" : " [over budget]");
        all_ok = all_ok && pass;
    }
    std::printf("%s\n", all_ok ? "acceptance: PASS (10/10)" : "acceptance: FAIL");
    return all_ok ? 0 : 1;
}
