/**
 * @file serialization.hpp
 * @brief JSON instance formats for the CLI: complex matrices (row-major,
 *        entries as [re, im] pairs), subspaces and Poisson spaces, structure
 *        constants, polynomial scalar fields, Lie-group specs, and *-algebra
 *        specs. Malformed inputs raise std::runtime_error with a
 *        "malformed instance file" prefix so the CLI can report them.
 */
#pragma once

#include "pgl/core.hpp"
#include "pgl/cotangent_groupoid.hpp"
#include "pgl/jet.hpp"
#include "pgl/linear_poisson.hpp"
#include "pgl/operator_groupoid.hpp"
#include "pgl/structure_constants.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pgl {

using Json = nlohmann::json;

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) {
    throw std::runtime_error("malformed instance file: " + what);
}

inline void require_key(const Json& j, const char* key, const char* who) {
    if (!j.is_object() || !j.contains(key))
        malformed(std::string(who) + " is missing key '" + key + "'");
}

}  // namespace detail

/// Complex matrix as a list of rows, each entry a [re, im] pair.
inline Json matrix_to_json(const Mat& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Mat matrix_from_json(const Json& j, const char* who) {
    if (!j.is_array()) detail::malformed(std::string(who) + " must be a list of rows");
    const size_t rows = j.size();
    size_t cols = 0;
    if (rows > 0) {
        if (!j[0].is_array()) detail::malformed(std::string(who) + " rows must be lists");
        cols = j[0].size();
    }
    Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            detail::malformed(std::string(who) + " rows are ragged");
        for (size_t c = 0; c < cols; ++c) {
            const Json& e = j[i][c];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                detail::malformed(std::string(who) + " entries must be [re, im] pairs");
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                cxd(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

// -------------------------------------------------------------------------
// Subspaces and linear Poisson spaces.

inline Json subspace_to_json(const Subspace& s) {
    return Json{{"kind", "subspace"},
                {"dim", s.ambient_dim},
                {"matrix", matrix_to_json(s.span)},
                {"tol", s.tol}};
}

inline Subspace subspace_from_json(const Json& j) {
    detail::require_key(j, "dim", "subspace");
    detail::require_key(j, "matrix", "subspace");
    const int dim = j["dim"].is_number_integer() ? j["dim"].get<int>() : -1;
    if (dim <= 0) detail::malformed("subspace dim must be a positive integer");
    const Mat span = matrix_from_json(j["matrix"], "subspace matrix");
    if (span.size() != 0 && span.rows() != dim)
        detail::malformed("subspace matrix rows disagree with dim");
    const double tol = j.value("tol", kDefaultTol);
    try {
        return Subspace(dim, span, tol);
    } catch (const std::invalid_argument& e) {
        detail::malformed(std::string("subspace rejected: ") + e.what());
    }
}

inline Json poisson_space_to_json(const LinearPoissonSpace& s) {
    return Json{{"kind", "poisson-space"},
                {"dim", s.dim_E},
                {"flat", matrix_to_json(s.flat_basis)},
                {"anchor", matrix_to_json(s.anchor)},
                {"tol", s.tol}};
}

inline LinearPoissonSpace poisson_space_from_json(const Json& j) {
    detail::require_key(j, "dim", "poisson-space");
    detail::require_key(j, "flat", "poisson-space");
    detail::require_key(j, "anchor", "poisson-space");
    const int dim = j["dim"].is_number_integer() ? j["dim"].get<int>() : -1;
    if (dim <= 0) detail::malformed("poisson-space dim must be a positive integer");
    const Mat flat = matrix_from_json(j["flat"], "poisson-space flat");
    const Mat anchor = matrix_from_json(j["anchor"], "poisson-space anchor");
    try {
        return LinearPoissonSpace(dim, flat, anchor, j.value("tol", kDefaultTol));
    } catch (const std::invalid_argument& e) {
        detail::malformed(std::string("poisson-space rejected: ") + e.what());
    }
}

// -------------------------------------------------------------------------
// Structure constants.

inline Json structure_constants_to_json(const StructureConstants& sc) {
    Json entries = Json::array();
    for (int i = 0; i < sc.dim; ++i)
        for (int j = 0; j < sc.dim; ++j)
            for (int k = 0; k < sc.dim; ++k)
                if (sc.at(i, j, k) != 0.0)
                    entries.push_back(Json::array({i, j, k, sc.at(i, j, k)}));
    return Json{{"kind", "structure-constants"}, {"dim", sc.dim}, {"entries", std::move(entries)}};
}

inline StructureConstants structure_constants_from_json(const Json& j) {
    detail::require_key(j, "dim", "structure-constants");
    detail::require_key(j, "entries", "structure-constants");
    const int dim = j["dim"].is_number_integer() ? j["dim"].get<int>() : -1;
    if (dim <= 0) detail::malformed("structure-constants dim must be a positive integer");
    if (!j["entries"].is_array()) detail::malformed("structure-constants entries must be a list");
    StructureConstants sc(dim);
    for (const Json& e : j["entries"]) {
        if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() ||
            !e[1].is_number_integer() || !e[2].is_number_integer() || !e[3].is_number())
            detail::malformed("structure-constants entries must be [i, j, k, value]");
        const int i = e[0].get<int>(), jj = e[1].get<int>(), k = e[2].get<int>();
        if (i < 0 || i >= dim || jj < 0 || jj >= dim || k < 0 || k >= dim)
            detail::malformed("structure-constants index out of range");
        sc.at(i, jj, k) = e[3].get<double>();
    }
    return sc;
}

// -------------------------------------------------------------------------
// Polynomial scalar fields.

inline Json polynomial_to_json(int dim,
                               const std::vector<std::pair<std::vector<int>, double>>& terms) {
    Json monomials = Json::array();
    for (const auto& t : terms) monomials.push_back(Json::array({Json(t.first), t.second}));
    return Json{{"kind", "polynomial"}, {"dim", dim}, {"monomials", std::move(monomials)}};
}

inline ScalarField polynomial_from_json(const Json& j) {
    detail::require_key(j, "dim", "polynomial");
    detail::require_key(j, "monomials", "polynomial");
    const int dim = j["dim"].is_number_integer() ? j["dim"].get<int>() : -1;
    if (dim <= 0) detail::malformed("polynomial dim must be a positive integer");
    if (!j["monomials"].is_array()) detail::malformed("polynomial monomials must be a list");
    std::vector<std::pair<std::vector<int>, double>> terms;
    for (const Json& m : j["monomials"]) {
        if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_number())
            detail::malformed("polynomial monomials must be [exponents, coeff]");
        std::vector<int> expo;
        for (const Json& e : m[0]) {
            if (!e.is_number_integer() || e.get<int>() < 0)
                detail::malformed("polynomial exponents must be nonnegative integers");
            expo.push_back(e.get<int>());
        }
        if (static_cast<int>(expo.size()) != dim)
            detail::malformed("polynomial exponent vector length disagrees with dim");
        terms.emplace_back(std::move(expo), m[1].get<double>());
    }
    return ScalarField::polynomial(dim, std::move(terms));
}

// -------------------------------------------------------------------------
// Group specs and *-algebra specs.

inline Json group_spec_to_json(const MatrixLieGroupSpec& g) {
    Json basis = Json::array();
    for (const Mat& b : g.basis) basis.push_back(matrix_to_json(b));
    return Json{{"kind", "group-spec"},
                {"n", g.n},
                {"basis", std::move(basis)},
                {"membership", g.name},
                {"tol", g.tol}};
}

inline MatrixLieGroupSpec group_spec_from_json(const Json& j) {
    detail::require_key(j, "n", "group-spec");
    detail::require_key(j, "basis", "group-spec");
    detail::require_key(j, "membership", "group-spec");
    const int n = j["n"].is_number_integer() ? j["n"].get<int>() : -1;
    if (n <= 0) detail::malformed("group-spec n must be a positive integer");
    if (!j["basis"].is_array() || j["basis"].empty())
        detail::malformed("group-spec basis must be a nonempty list of matrices");
    if (!j["membership"].is_string()) detail::malformed("group-spec membership must be a string");
    std::vector<Mat> basis;
    for (const Json& b : j["basis"]) {
        Mat m = matrix_from_json(b, "group-spec basis matrix");
        if (m.rows() != n || m.cols() != n)
            detail::malformed("group-spec basis matrices must be n x n");
        basis.push_back(std::move(m));
    }
    const std::string membership = j["membership"].get<std::string>();
    try {
        return MatrixLieGroupSpec(std::move(basis), groups::membership_by_name(membership),
                                  membership, j.value("tol", kDefaultTol));
    } catch (const std::invalid_argument& e) {
        detail::malformed(std::string("group-spec rejected: ") + e.what());
    }
}

inline Json algebra_spec_to_json(const StarAlgebraSpec& a) {
    return Json{{"kind", "algebra-spec"}, {"n", a.n}, {"blocks", a.block_sizes}, {"tol", a.tol}};
}

inline StarAlgebraSpec algebra_spec_from_json(const Json& j) {
    detail::require_key(j, "n", "algebra-spec");
    detail::require_key(j, "blocks", "algebra-spec");
    const int n = j["n"].is_number_integer() ? j["n"].get<int>() : -1;
    if (n <= 0) detail::malformed("algebra-spec n must be a positive integer");
    if (!j["blocks"].is_array()) detail::malformed("algebra-spec blocks must be a list");
    std::vector<int> blocks;
    for (const Json& b : j["blocks"]) {
        if (!b.is_number_integer()) detail::malformed("algebra-spec blocks must be integers");
        blocks.push_back(b.get<int>());
    }
    try {
        return StarAlgebraSpec(n, std::move(blocks), j.value("tol", kDefaultTol));
    } catch (const std::invalid_argument& e) {
        detail::malformed(std::string("algebra-spec rejected: ") + e.what());
    }
}

/// Complex square matrix sample for operator suites: {n, matrix}.
inline Json operator_sample_to_json(const Mat& m) {
    return Json{{"kind", "operator-sample"},
                {"n", static_cast<int>(m.rows())},
                {"matrix", matrix_to_json(m)}};
}

inline Mat operator_sample_from_json(const Json& j) {
    detail::require_key(j, "n", "operator-sample");
    detail::require_key(j, "matrix", "operator-sample");
    const int n = j["n"].is_number_integer() ? j["n"].get<int>() : -1;
    if (n <= 0) detail::malformed("operator-sample n must be a positive integer");
    const Mat m = matrix_from_json(j["matrix"], "operator-sample matrix");
    if (m.rows() != n || m.cols() != n) detail::malformed("operator-sample matrix must be n x n");
    return m;
}

}  // namespace pgl
