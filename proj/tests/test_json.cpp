#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opframe/generators.hpp"
#include "opframe/json_io.hpp"

using namespace opframe;

namespace {

const AlgebraDescriptor kFull3{AlgebraKind::full, 3};
const AlgebraDescriptor kDiag3{AlgebraKind::diagonal, 3};

}  // namespace

TEST_CASE("algebra elements survive the round trip") {
    Rng rng(91);
    for (auto d : {kFull3, kDiag3}) {
        const auto a = random_element(d, rng);
        const auto back = algebra_element_from_json(to_json(a));
        CHECK(back.desc == a.desc);
        CHECK(frob(sub(back, a)) == 0.0);
    }
}

TEST_CASE("diagonal elements serialize flat and read both ways") {
    const auto a = diag_element(kDiag3, {cxd{1, 2}, cxd{3, 0}, cxd{0, -1}});
    const json j = to_json(a);
    REQUIRE(j.at("entries").is_array());
    CHECK(j.at("entries").size() == 3);
    CHECK(j.at("entries")[0][0].get<double>() == 1.0);

    // Grid form of the same element must parse identically.
    json grid = {{"kind", "diagonal"}, {"n", 3}};
    grid["entries"] = json::array();
    for (int i = 0; i < 3; ++i) {
        json row = json::array();
        for (int k = 0; k < 3; ++k) {
            const cxd z = a.at(i, k);
            row.push_back(json::array({z.real(), z.imag()}));
        }
        grid["entries"].push_back(row);
    }
    const auto back = algebra_element_from_json(grid);
    CHECK(frob(sub(back, a)) == 0.0);
}

TEST_CASE("module vectors and operators round trip") {
    Rng rng(92);
    const auto x = random_module_vector(kFull3, 2, rng);
    const auto xb = module_vector_from_json(to_json(x), kFull3);
    CHECK(module_norm(sub(xb, x)) == 0.0);

    const auto t = random_operator(kDiag3, 2, rng);
    const auto tb = module_operator_from_json(to_json(t), kDiag3);
    CHECK(operator_norm(sub(tb, t)) == 0.0);

    CoefficientSequence s;
    s.entries = {x, random_module_vector(kFull3, 2, rng)};
    const auto sb = coefficient_sequence_from_json(to_json(s), kFull3);
    REQUIRE(sb.size() == 2);
    for (int i = 0; i < 2; ++i)
        CHECK(module_norm(sub(sb.entries[i], s.entries[i])) == 0.0);
}

TEST_CASE("instances round trip with and without bounds") {
    for (auto kind : {InstanceKind::scalar_controller, InstanceKind::diagonal,
                      InstanceKind::harmonic}) {
        GenSpec spec;
        spec.kind = kind;
        const Instance inst = generate_instance(spec, 7);
        const Instance back = instance_from_json(to_json(inst));
        CHECK(back.family.size() == inst.family.size());
        CHECK(back.bounds.has_value() == inst.bounds.has_value());
        for (int i = 0; i < inst.family.size(); ++i)
            CHECK(operator_norm(sub(back.family.ops[i], inst.family.ops[i])) ==
                  0.0);
        CHECK(operator_norm(sub(back.family.C, inst.family.C)) == 0.0);
        if (inst.bounds)
            CHECK(frob(sub(back.bounds->A, inst.bounds->A)) == 0.0);
    }
}

TEST_CASE("malformed input is rejected with a diagnostic") {
    CHECK_THROWS_AS(instance_from_json(json::parse("{}")), std::runtime_error);
    CHECK_THROWS_AS(algebra_element_from_json(
                        json{{"kind", "full"}, {"n", 0}, {"entries", json::array()}}),
                    std::runtime_error);
    CHECK_THROWS_AS(algebra_element_from_json(
                        json{{"kind", "sparse"}, {"n", 2}, {"entries", json::array()}}),
                    std::runtime_error);

    // Off-diagonal garbage in a diagonal element.
    json bad = {{"kind", "diagonal"}, {"n", 2}};
    bad["entries"] = {{json::array({1.0, 0.0}), json::array({5.0, 0.0})},
                      {json::array({0.0, 0.0}), json::array({2.0, 0.0})}};
    CHECK_THROWS_AS(algebra_element_from_json(bad), std::runtime_error);

    // Row count mismatch.
    json short_rows = {{"kind", "full"}, {"n", 2}};
    short_rows["entries"] = {{json::array({1.0, 0.0}), json::array({0.0, 0.0})}};
    CHECK_THROWS_AS(algebra_element_from_json(short_rows), std::runtime_error);
}

TEST_CASE("certificates and reports serialize their fields") {
    GenSpec spec;
    spec.kind = InstanceKind::harmonic;
    spec.d = 3;
    const Instance inst = generate_instance(spec, 1);
    const auto cert = certify_instance(inst);
    const json j = to_json(cert);
    for (const char* key :
         {"verdict", "scalar_lower", "scalar_upper", "star_residual_min",
          "commutation_residual", "tol", "samples", "seed", "tight",
          "parseval", "check_residuals"})
        CHECK(j.contains(key));
    CHECK(j.at("verdict") == "controlled_star_frame");
    CHECK(j.at("tight").get<bool>());

    const auto res = canonical_rescale(inst.family, inst.bounds);
    const json r = to_json(res.report);
    for (const char* key : {"predicted_lower", "predicted_upper", "certificate",
                            "frame_operator_residual", "mode", "held"})
        CHECK(r.contains(key));
}

TEST_CASE("serialization is deterministic") {
    GenSpec spec;
    const Instance a = generate_instance(spec, 99);
    const Instance b = generate_instance(spec, 99);
    CHECK(to_json(a).dump() == to_json(b).dump());
}
