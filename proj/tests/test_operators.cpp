#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "opframe/operators.hpp"
#include "opframe/random_vectors.hpp"

using namespace opframe;

namespace {

const AlgebraDescriptor kFull2{AlgebraKind::full, 2};
const AlgebraDescriptor kFull3{AlgebraKind::full, 3};
const AlgebraDescriptor kDiag3{AlgebraKind::diagonal, 3};

double vec_dist(const ModuleVector& x, const ModuleVector& y) {
    return module_norm(sub(x, y));
}

}  // namespace

TEST_CASE("apply identity and zero") {
    Rng rng(51);
    const auto x = random_module_vector(kFull2, 3, rng);
    CHECK(vec_dist(apply(identity_operator(kFull2, 3), x), x) == 0.0);
    CHECK(module_norm(apply(zero_operator(kFull2, 3), x)) == 0.0);
}

TEST_CASE("apply is A-linear") {
    Rng rng(52);
    for (int t = 0; t < 6; ++t) {
        const auto op = random_operator(kFull3, 2, rng);
        const auto a = random_element(kFull3, rng);
        const auto x = random_module_vector(kFull3, 2, rng);
        const auto lhs = apply(op, left_action(a, x));
        const auto rhs = left_action(a, apply(op, x));
        CHECK(vec_dist(lhs, rhs) <= 1e-12 * (1.0 + module_norm(rhs)));
    }
}

TEST_CASE("compose matches nested application") {
    Rng rng(53);
    for (int t = 0; t < 6; ++t) {
        const auto op1 = random_operator(kFull3, 3, rng);
        const auto op2 = random_operator(kFull3, 3, rng);
        const auto x = random_module_vector(kFull3, 3, rng);
        const auto lhs = apply(compose(op1, op2), x);
        const auto rhs = apply(op1, apply(op2, x));
        CHECK(vec_dist(lhs, rhs) <= 1e-11 * (1.0 + module_norm(rhs)));
    }

    const auto id = identity_operator(kFull3, 2);
    const auto op = random_operator(kFull3, 2, rng);
    CHECK(operator_norm(sub(compose(id, op), op)) <= 1e-13);
    CHECK(operator_norm(compose(op, zero_operator(kFull3, 2))) == 0.0);
}

TEST_CASE("compose is associative") {
    Rng rng(54);
    const auto a = random_operator(kFull2, 2, rng);
    const auto b = random_operator(kFull2, 2, rng);
    const auto c = random_operator(kFull2, 2, rng);
    const auto lhs = compose(compose(a, b), c);
    const auto rhs = compose(a, compose(b, c));
    CHECK(operator_norm(sub(lhs, rhs)) <= 1e-11);
}

TEST_CASE("adjoint satisfies the defining identity") {
    const auto id = identity_operator(kFull3, 2);
    CHECK(operator_norm(sub(adjoint(id), id)) == 0.0);

    Rng rng(55);
    // Rank one: the adjoint grid is the star of the entry.
    ModuleOperator r1(kFull2, 1);
    r1.at(0, 0) = random_element(kFull2, rng);
    const auto r1a = adjoint(r1);
    CHECK(norm(sub(r1a.at(0, 0), star(r1.at(0, 0)))) == 0.0);

    for (int t = 0; t < 6; ++t) {
        const auto op = random_operator(kFull3, 3, rng);
        const auto x = random_module_vector(kFull3, 3, rng);
        const auto y = random_module_vector(kFull3, 3, rng);
        const auto lhs = inner_product(apply(op, x), y);
        const auto rhs = inner_product(x, apply(adjoint(op), y));
        CHECK(norm(sub(lhs, rhs)) <= 1e-11 * (1.0 + norm(rhs)));

        // Involution is exact.
        const auto back = adjoint(adjoint(op));
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                CHECK(frob(sub(back.at(j, k), op.at(j, k))) == 0.0);
    }
}

TEST_CASE("block realization is a star isomorphism") {
    Rng rng(56);
    const auto id_block = block_realization(identity_operator(kFull3, 2));
    for (int i = 0; i < id_block.dim; ++i)
        for (int j = 0; j < id_block.dim; ++j)
            CHECK(id_block.m[i * id_block.dim + j] ==
                  (i == j ? cxd{1, 0} : cxd{0, 0}));

    for (int t = 0; t < 6; ++t) {
        const auto op1 = random_operator(kFull3, 2, rng);
        const auto op2 = random_operator(kFull3, 2, rng);
        const int dim = op1.block_dim();

        const auto b1 = block_realization(op1).m;
        const auto b2 = block_realization(op2).m;
        const auto bc = block_realization(compose(op1, op2)).m;
        const auto prod = kern::matmul(b1, b2, dim, dim, dim);
        double r = 0.0;
        for (std::size_t i = 0; i < prod.size(); ++i)
            r = std::max(r, std::abs(prod[i] - bc[i]));
        CHECK(r <= 1e-12 * (1.0 + kern::frob_norm(prod)));

        const auto badj = block_realization(adjoint(op1)).m;
        const auto dag = kern::dagger(b1, dim, dim);
        double r2 = 0.0;
        for (std::size_t i = 0; i < dag.size(); ++i)
            r2 = std::max(r2, std::abs(dag[i] - badj[i]));
        CHECK(r2 == 0.0);
    }
}

TEST_CASE("vector slices intertwine with the realization") {
    Rng rng(57);
    const auto op = random_operator(kFull3, 2, rng);
    const auto x = random_module_vector(kFull3, 2, rng);
    const auto b = block_realization(op);
    const auto tx = apply(op, x);
    for (int a = 0; a < 3; ++a) {
        const auto u = vector_slice(x, a);
        const auto want = vector_slice(tx, a);
        std::vector<cxd> got(u.size(), cxd{0, 0});
        for (int i = 0; i < b.dim; ++i)
            for (int j = 0; j < b.dim; ++j) got[i] += b.m[i * b.dim + j] * u[j];
        double r = 0.0;
        for (std::size_t i = 0; i < got.size(); ++i)
            r = std::max(r, std::abs(got[i] - want[i]));
        CHECK(r <= 1e-12 * (1.0 + kern::frob_norm(u)));
    }

    // Round trip through slices.
    std::vector<std::vector<cxd>> slices;
    for (int a = 0; a < 3; ++a) slices.push_back(vector_slice(x, a));
    const auto back = vector_from_slices(kFull3, 2, slices);
    CHECK(vec_dist(back, x) == 0.0);
}

TEST_CASE("operator norm") {
    CHECK(operator_norm(identity_operator(kFull3, 2)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(operator_norm(scalar_operator(kFull3, 2, 2.0)) ==
          doctest::Approx(2.0).epsilon(1e-12));

    Rng rng(58);
    for (int t = 0; t < 5; ++t) {
        const auto a = random_operator(kFull2, 2, rng);
        const auto b = random_operator(kFull2, 2, rng);
        CHECK(operator_norm(compose(a, b)) <=
              operator_norm(a) * operator_norm(b) + 1e-10);
    }

    // Power-iteration oracle on the realization Gram matrix.
    const auto op = random_operator(kFull3, 3, rng);
    const auto blk = block_realization(op);
    const int dim = blk.dim;
    const auto g = kern::matmul(kern::dagger(blk.m, dim, dim), blk.m, dim, dim,
                                dim);
    std::vector<cxd> v(dim);
    for (auto& z : v) z = rng.cnormal();
    double lambda = 0.0;
    for (int it = 0; it < 3000; ++it) {
        std::vector<cxd> w(dim, cxd{0, 0});
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) w[i] += g[i * dim + j] * v[j];
        double nrm = 0.0;
        for (const auto& z : w) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        lambda = nrm;
        for (int i = 0; i < dim; ++i) v[i] = w[i] / nrm;
    }
    CHECK(std::abs(operator_norm(op) - std::sqrt(lambda)) <=
          1e-8 * std::max(1.0, std::sqrt(lambda)));
}

TEST_CASE("positivity of operators") {
    CHECK(is_positive_operator(identity_operator(kFull2, 2)));
    CHECK_FALSE(is_positive_operator(scalar_operator(kFull2, 2, -1.0)));

    Rng rng(59);
    for (int t = 0; t < 5; ++t) {
        const auto u = random_operator(kFull2, 2, rng);
        const auto gram = compose(adjoint(u), u);
        CHECK(is_positive_operator(gram));

        // Sampled equivalence: <T x, x> is positive in A.
        for (int k = 0; k < 100; ++k) {
            const auto x = random_module_vector(kFull2, 2, rng);
            CHECK(is_positive(inner_product(apply(gram, x), x), 1e-9));
        }
    }
}

TEST_CASE("GL+ membership") {
    CHECK(is_gl_plus(scalar_operator(kFull2, 2, 0.5)));

    // A rank-deficient projection is positive but not invertible.
    ModuleOperator proj(kFull2, 2);
    proj.at(0, 0) = unit_element(kFull2);
    CHECK(is_positive_operator(proj));
    CHECK_FALSE(is_gl_plus(proj));

    Rng rng(60);
    CHECK(is_gl_plus(random_gl_plus_operator(kFull2, 2, rng)));
}

TEST_CASE("operator square root") {
    const auto id = identity_operator(kFull3, 2);
    CHECK(operator_norm(sub(operator_sqrt(id), id)) <= 1e-12);
    CHECK(operator_norm(sub(operator_sqrt(scalar_operator(kFull3, 2, 4.0)),
                            scalar_operator(kFull3, 2, 2.0))) <= 1e-12);

    Rng rng(61);
    for (int t = 0; t < 5; ++t) {
        const auto p = random_gl_plus_operator(kFull2, 2, rng);
        const auto r = operator_sqrt(p);
        CHECK(operator_norm(sub(compose(r, r), p)) <=
              1e-10 * std::max(1.0, operator_norm(p)));
    }
    CHECK_THROWS_AS(operator_sqrt(scalar_operator(kFull2, 1, -1.0)),
                    std::invalid_argument);
}

TEST_CASE("bounded below constant") {
    CHECK(bounded_below_constant(identity_operator(kFull2, 2)) ==
          doctest::Approx(1.0).epsilon(1e-12));

    ModuleOperator proj(kFull2, 2);
    proj.at(0, 0) = unit_element(kFull2);
    CHECK(bounded_below_constant(proj) <= 1e-12);

    // Independent route: sigma_min(B) * sigma_max(B^{-1}) = 1.
    Rng rng(62);
    const auto op = random_invertible_operator(kFull2, 2, rng);
    const auto inv = operator_inverse(op);
    const double product = bounded_below_constant(op) * operator_norm(inv);
    CHECK(std::abs(product - 1.0) <= 1e-9);
}

TEST_CASE("bounded-below inner product equivalence at finite scale") {
    Rng rng(63);
    const auto op = random_invertible_operator(kFull2, 2, rng);
    const double sigma = bounded_below_constant(op);
    REQUIRE(sigma > 1e-9);
    const double mp = sigma * sigma - 1e-8;
    const auto adj = adjoint(op);
    for (int k = 0; k < 100; ++k) {
        const auto x = random_module_vector(kFull2, 2, rng);
        const auto tx = apply(adj, x);
        const auto diff = sub(inner_product(tx, tx),
                              scale(mp, inner_product(x, x)));
        CHECK(is_positive(diff, 1e-9));
    }

    // The other direction of the dichotomy: a rank-deficient operator
    // admits no positive lower constant, witnessed on a kernel vector.
    ModuleOperator proj(kFull2, 2);
    proj.at(0, 0) = unit_element(kFull2);
    const auto kernel_vec = basis_vector(kFull2, 2, 1);
    const auto px = apply(adjoint(proj), kernel_vec);
    const auto diff = sub(inner_product(px, px),
                          scale(1e-4, inner_product(kernel_vec, kernel_vec)));
    CHECK_FALSE(is_positive(diff, 1e-9));
}

TEST_CASE("norm bound on the inner product") {
    Rng rng(64);
    for (int t = 0; t < 6; ++t) {
        const auto op = random_operator(kFull3, 2, rng);
        const double n2 = operator_norm(op) * operator_norm(op);
        const auto x = random_module_vector(kFull3, 2, rng);
        const auto tx = apply(op, x);
        const auto diff = sub(scale(n2, inner_product(x, x)),
                              inner_product(tx, tx));
        CHECK(is_positive(diff, 1e-9));
    }
}

TEST_CASE("gram envelope") {
    const auto env_id = gram_envelope(identity_operator(kFull2, 2));
    CHECK(env_id.first == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(env_id.second == doctest::Approx(1.0).epsilon(1e-10));

    const auto env3 = gram_envelope(scalar_operator(kFull2, 2, 3.0));
    CHECK(env3.first == doctest::Approx(9.0).epsilon(1e-10));
    CHECK(env3.second == doctest::Approx(9.0).epsilon(1e-10));

    Rng rng(65);
    const auto op = random_invertible_operator(kFull2, 2, rng);
    const auto env = gram_envelope(op);
    CHECK(env.first <= env.second);

    ModuleOperator proj(kFull2, 2);
    proj.at(0, 0) = unit_element(kFull2);
    CHECK_THROWS_AS(gram_envelope(proj), std::invalid_argument);
}

TEST_CASE("operator inverse") {
    Rng rng(66);
    const auto op = random_invertible_operator(kFull3, 2, rng);
    const auto inv = operator_inverse(op);
    const auto prod = compose(op, inv);
    CHECK(operator_norm(sub(prod, identity_operator(kFull3, 2))) <= 1e-9);
    CHECK_THROWS_AS(operator_inverse(zero_operator(kFull2, 2)),
                    std::invalid_argument);
}

TEST_CASE("diagonal operators stay diagonal through the block round trip") {
    Rng rng(67);
    ModuleOperator t(kDiag3, 2);
    for (int j = 0; j < 2; ++j) t.at(j, j) = random_element(kDiag3, rng);
    const auto back = operator_from_block(kDiag3, 2, block_realization(t));
    CHECK(operator_norm(sub(back, t)) == 0.0);
    const auto r = operator_sqrt(compose(adjoint(t), t));
    for (const auto& g : r.grid)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j) CHECK(g.at(i, j) == cxd{0, 0});
}
