#include <catch2/catch.hpp>

#include "qcorr/demon.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/property_checks.hpp"
#include "qcorr/random.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {
std::vector<CMatrix> povm_matrices(const RankOnePovm& povm) {
    std::vector<CMatrix> out;
    for (int a = 0; a < povm.size(); ++a) out.push_back(povm.element_matrix(a));
    return out;
}
}  // namespace

TEST_CASE("Bell state with z-basis demons nets one bit", "[demon]") {
    const DensityMatrix bell = bell_state(BellKind::PhiPlus);
    const auto z = povm_matrices(projective_pair_povm({0.0, 0.0}));
    const WorkLedger led = net_classical_work(bell, z, z);
    CHECK(led.h_ab == Approx(1.0).margin(1e-10));       // perfectly correlated half/half record
    CHECK(led.residual_a == Approx(0.0).margin(1e-10)); // rank-one: pure post-measurement states
    CHECK(led.residual_b == Approx(0.0).margin(1e-10));
    CHECK(led.w_plus == Approx(2.0).margin(1e-10));
    CHECK(led.w_net == Approx(1.0).margin(1e-10));
}

TEST_CASE("trivial measurement on A leaves its work on the table", "[demon]") {
    const DensityMatrix bell = bell_state(BellKind::PhiPlus);
    const std::vector<CMatrix> trivial{CMatrix::identity(2)};
    const auto z = povm_matrices(projective_pair_povm({0.0, 0.0}));
    const WorkLedger led = net_classical_work(bell, trivial, z);
    CHECK(led.h_ab == Approx(1.0).margin(1e-10));
    CHECK(led.residual_a == Approx(1.0).margin(1e-10));  // rho_{A|a} = I/2 stays behind
    CHECK(led.residual_b == Approx(0.0).margin(1e-10));  // B collapses to a pure state
    CHECK(led.w_net == Approx(0.0).margin(1e-10));
}

TEST_CASE("maximally mixed state yields no net work", "[demon]") {
    CMatrix quarter = CMatrix::identity(4);
    quarter *= cplx(0.25, 0.0);
    const DensityMatrix rho = validate_density_matrix(quarter, 2, 2);
    const auto e = povm_matrices(projective_pair_povm({0.3, 0.7}));
    const auto f = povm_matrices(projective_pair_povm({1.2, 4.0}));
    const WorkLedger led = net_classical_work(rho, e, f);
    CHECK(led.h_ab == Approx(2.0).margin(1e-10));
    CHECK(led.w_net == Approx(0.0).margin(1e-10));
}

TEST_CASE("refinement of an already-rank-one POVM is a no-op", "[demon]") {
    const DensityMatrix bell = bell_state(BellKind::PhiPlus);
    const RankOnePovm pair = projective_pair_povm({0.4, 1.0});
    const CMatrix rho_a = partial_trace(bell, Subsystem::A);

    std::vector<CMatrix> elements, posts;
    for (int a = 0; a < pair.size(); ++a) {
        const CMatrix e = pair.element_matrix(a);
        const CMatrix se = sqrt_psd(e);
        CMatrix post = se * rho_a * se;
        post *= cplx(1.0 / std::real(post.trace()), 0.0);
        elements.push_back(e);
        posts.push_back(post);
    }
    const RankOneRefinement ref = refine_to_rank_one(elements, posts);
    CHECK(ref.povm.elements.size() == 2);  // one surviving piece per pure post-state
    for (const auto& rec : ref.records) {
        double h = 0.0;
        for (double lam : rec) h += lam > 1e-14 ? -lam * std::log2(lam) : 0.0;
        CHECK(h == Approx(0.0).margin(1e-10));
    }
}

TEST_CASE("refining the trivial POVM on a mixed qubit adds one bit of record", "[demon]") {
    CMatrix half = CMatrix::identity(2);
    half *= cplx(0.5, 0.0);
    const RankOneRefinement ref =
        refine_to_rank_one({CMatrix::identity(2)}, {half});
    REQUIRE(ref.records.size() == 1);
    double h = 0.0;
    for (double lam : ref.records[0]) h += lam > 1e-14 ? -lam * std::log2(lam) : 0.0;
    CHECK(h == Approx(1.0).margin(1e-12));  // lambda = (1/2, 1/2)
    ref.povm.validate(1e-9);
}

TEST_CASE("coarse and refined ledgers agree", "[demon]") {
    Rng rng(42);
    for (int t = 0; t < 10; ++t) {
        const DensityMatrix rho = random_density(2, 2, 4, rng);
        const auto e = random_coarse_povm_elements(2, 2, 2, rng);
        const auto f = random_coarse_povm_elements(2, 2, 2, rng);
        const WorkLedger coarse = net_classical_work(rho, e, f);
        const WorkLedger refined = refined_work_ledger(rho, e, f);
        CHECK(refined.w_net == Approx(coarse.w_net).margin(1e-9));
        // record entropies equal the quantum residuals term by term
        CHECK(refined.record_a == Approx(coarse.residual_a).margin(1e-9));
        CHECK(refined.record_b == Approx(coarse.residual_b).margin(1e-9));
    }
}

TEST_CASE("demon invariance property suite", "[demon][property]") {
    const CheckReport rep = check_demon_invariance(40, 7);
    INFO("violations=" << rep.violations << " worst=" << rep.worst_excess);
    CHECK(rep.passed());
}

TEST_CASE("rank-one ledgers link net work to the joint record entropy", "[demon]") {
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
        const DensityMatrix rho = random_density(2, 2, 4, rng);
        const auto e = povm_matrices(projective_pair_povm(
            {rng.uniform(0.0, kPi / 2), rng.uniform(0.0, 2 * kPi)}));
        const auto f = povm_matrices(projective_pair_povm(
            {rng.uniform(0.0, kPi / 2), rng.uniform(0.0, 2 * kPi)}));
        const WorkLedger led = net_classical_work(rho, e, f);
        CHECK(std::log2(4.0) - led.w_net == Approx(led.h_ab).margin(1e-10));
    }
}

TEST_CASE("conditioned rank-one strategy ledger", "[demon]") {
    Rng rng(13);
    const DensityMatrix rho = random_density(2, 2, 4, rng);
    ConditionedStrategy s;
    s.a_povm = projective_pair_povm({0.5, 1.5});
    s.label_of_a = {0, 1};
    for (const auto& c : conditional_states_B(rho, s.a_povm))
        s.b_povms.push_back(marginal_eigenbasis_povm(c.rho_b).first);
    const WorkLedger led = net_classical_work(rho, s);
    CHECK(led.w_plus == Approx(2.0).margin(1e-12));
    CHECK(led.w_net == Approx(2.0 - led.h_ab).margin(1e-12));

    // eigenbasis conditioning realizes the demon-discord objective:
    // H(A,B) = H(A) + sum_a p_a S(rho_{B|a})
    const auto cond = conditional_states_B(rho, s.a_povm);
    double expected = 0.0, h_a = 0.0;
    for (const auto& c : cond) {
        expected += c.p_a * von_neumann_entropy(c.rho_b);
        h_a += c.p_a > 1e-14 ? -c.p_a * std::log2(c.p_a) : 0.0;
    }
    CHECK(led.h_ab == Approx(h_a + expected).margin(1e-9));
}

TEST_CASE("work deficit without communication equals the mutual information", "[demon]") {
    CHECK(work_deficit_no_comm(bell_state(BellKind::PhiPlus)) == Approx(2.0).margin(1e-10));

    Rng rng(15);
    const DensityMatrix a = random_density(1, 2, 2, rng);
    const DensityMatrix b = random_density(1, 2, 2, rng);
    CHECK(work_deficit_no_comm(validate_density_matrix(tensor_product(a.mat, b.mat), 2, 2)) ==
          Approx(0.0).margin(1e-10));

    for (int t = 0; t < 10; ++t) {
        const DensityMatrix rho = random_density(2, 3, 6, rng);
        CHECK(work_deficit_no_comm(rho) ==
              Approx(quantum_mutual_information(rho)).margin(1e-12));
    }
}
