#include <catch2/catch.hpp>

#include "qcorr/measurement.hpp"
#include "qcorr/property_checks.hpp"
#include "qcorr/random.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {
CMatrix povm_sum(const RankOnePovm& povm) {
    CMatrix s(povm.dim);
    for (int a = 0; a < povm.size(); ++a) s += povm.element_matrix(a);
    return s;
}
}  // namespace

TEST_CASE("projective pair at reference angles", "[measurement]") {
    const RankOnePovm z = projective_pair_povm({0.0, 0.0});
    CHECK(std::abs(z.elements[0].ket[0] - cplx(1.0)) < 1e-15);
    CHECK(std::abs(z.elements[0].ket[1]) < 1e-15);
    CHECK(std::abs(z.elements[1].ket[1] - cplx(1.0)) < 1e-15);

    const RankOnePovm x = projective_pair_povm({kPi / 4, 0.0});
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(x.elements[0].ket[0] - cplx(r)) < 1e-12);
    CHECK(std::abs(x.elements[0].ket[1] - cplx(r)) < 1e-12);
    CHECK(expectation(pauli(1), x.elements[0].ket) == Approx(1.0).margin(1e-12));
}

TEST_CASE("projective pairs are complete for any angles", "[measurement]") {
    Rng rng(1);
    for (int t = 0; t < 30; ++t) {
        const QubitProjectivePair ang{rng.uniform(0.0, kPi / 2), rng.uniform(0.0, 2 * kPi)};
        const RankOnePovm povm = projective_pair_povm(ang);
        CHECK(povm_sum(povm).max_abs_diff(CMatrix::identity(2)) < 1e-12);
        // axis formula matches the projector
        CMatrix proj = CMatrix::identity(2);
        const Vec3 m = projective_pair_axis(ang);
        for (int j = 0; j < 3; ++j) proj += cplx(m[j], 0.0) * pauli(j + 1);
        proj *= cplx(0.5, 0.0);
        CHECK(proj.max_abs_diff(povm.element_matrix(0)) < 1e-12);
    }
}

TEST_CASE("marginal eigenbasis POVM", "[measurement]") {
    CMatrix diag(2);
    diag(0, 0) = 0.7;
    diag(1, 1) = 0.3;
    const auto [povm, degenerate] = marginal_eigenbasis_povm(diag);
    CHECK_FALSE(degenerate);
    CHECK(std::abs(std::norm(povm.elements[0].ket[0]) - 1.0) < 1e-12);  // z basis

    CMatrix half = CMatrix::identity(2);
    half *= cplx(0.5, 0.0);
    CHECK(marginal_eigenbasis_povm(half).second);

    Rng rng(6);
    const DensityMatrix rho = random_density(1, 3, 3, rng);
    const auto [basis, flag] = marginal_eigenbasis_povm(rho.mat);
    for (int a = 0; a < basis.size(); ++a) {
        const CMatrix p = basis.element_matrix(a);
        const CMatrix comm = p * rho.mat - rho.mat * p;
        CHECK(comm.max_abs() < 1e-10);  // projectors commute with the marginal
    }
    CHECK(povm_sum(basis).max_abs_diff(CMatrix::identity(3)) < 1e-10);
}

TEST_CASE("unconditioned joint distribution", "[measurement]") {
    const DensityMatrix bell = bell_state(BellKind::PhiPlus);
    const RankOnePovm z = projective_pair_povm({0.0, 0.0});
    const JointDistribution jd = joint_distribution_unconditioned(bell, z, z);
    CHECK(jd(0, 0) == Approx(0.5).margin(1e-12));
    CHECK(jd(1, 1) == Approx(0.5).margin(1e-12));
    CHECK(jd(0, 1) == Approx(0.0).margin(1e-12));
    CHECK(jd(1, 0) == Approx(0.0).margin(1e-12));

    Rng rng(3);
    const DensityMatrix a = random_density(1, 2, 2, rng);
    const DensityMatrix b = random_density(1, 2, 2, rng);
    const DensityMatrix prod = validate_density_matrix(tensor_product(a.mat, b.mat), 2, 2);
    const QubitProjectivePair ang1{rng.uniform(0.0, kPi / 2), rng.uniform(0.0, 2 * kPi)};
    const QubitProjectivePair ang2{rng.uniform(0.0, kPi / 2), rng.uniform(0.0, 2 * kPi)};
    const JointDistribution pd = joint_distribution_unconditioned(
        prod, projective_pair_povm(ang1), projective_pair_povm(ang2));
    const auto ma = pd.marginal_a();
    const auto mb = pd.marginal_b();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(pd(i, j) == Approx(ma[i] * mb[j]).margin(1e-10));

    // marginals match single-subsystem probabilities
    const CMatrix rho_a = partial_trace(prod, Subsystem::A);
    const RankOnePovm e = projective_pair_povm(ang1);
    for (int i = 0; i < 2; ++i) {
        const CMatrix prod_e = e.element_matrix(i) * rho_a;
        CHECK(ma[i] == Approx(std::real(prod_e.trace())).margin(1e-10));
    }

    double total = 0.0;
    for (double p : pd.flat()) total += p;
    CHECK(total == Approx(1.0).margin(1e-10));
}

TEST_CASE("conditional states of B", "[measurement]") {
    const DensityMatrix bell = bell_state(BellKind::PhiPlus);
    const auto cond = conditional_states_B(bell, projective_pair_povm({0.0, 0.0}));
    REQUIRE(cond.size() == 2);
    CHECK(cond[0].p_a == Approx(0.5).margin(1e-12));
    CHECK(std::real(cond[0].rho_b(0, 0)) == Approx(1.0).margin(1e-12));  // |0><0| for outcome 0

    Rng rng(4);
    const DensityMatrix a = random_density(1, 2, 2, rng);
    const DensityMatrix b = random_density(1, 2, 2, rng);
    const DensityMatrix prod = validate_density_matrix(tensor_product(a.mat, b.mat), 2, 2);
    for (const auto& c :
         conditional_states_B(prod, projective_pair_povm({0.3, 1.1})))
        CHECK(c.rho_b.max_abs_diff(b.mat) < 1e-10);

    // ensemble identity: sum_a p_a rho_{B|a} = rho_B
    const DensityMatrix rho = random_density(2, 3, 6, rng);
    RankOnePovm e;
    e.dim = 2;
    {
        const CMatrix u = random_unitary(2, rng);
        e.elements = {{1.0, {u(0, 0), u(1, 0)}}, {1.0, {u(0, 1), u(1, 1)}}};
    }
    CMatrix mix(3);
    for (const auto& c : conditional_states_B(rho, e)) {
        CMatrix scaled = c.rho_b;
        scaled *= cplx(c.p_a, 0.0);
        mix += scaled;
    }
    CHECK(mix.max_abs_diff(partial_trace(rho, Subsystem::B)) < 1e-9);
}

TEST_CASE("conditioned strategy with one label equals unconditioned", "[measurement]") {
    Rng rng(5);
    const DensityMatrix rho = random_density(2, 2, 4, rng);
    ConditionedStrategy s;
    s.a_povm = projective_pair_povm({0.4, 0.9});
    s.label_of_a = {0, 0};
    s.b_povms = {projective_pair_povm({1.0, 2.0})};
    s.validate();
    const JointDistribution cond = joint_distribution_conditioned(rho, s);
    const JointDistribution flat =
        joint_distribution_unconditioned(rho, s.a_povm, s.b_povms[0]);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) CHECK(cond(a, b) == Approx(flat(a, b)).margin(1e-12));
}

TEST_CASE("conditioned eigenbasis measurement saturates the conditional bound", "[measurement]") {
    Rng rng(6);
    const DensityMatrix rho = random_density(2, 2, 4, rng);
    const RankOnePovm e = projective_pair_povm({0.7, 2.3});
    const auto cond = conditional_states_B(rho, e);
    REQUIRE(cond.size() == 2);

    ConditionedStrategy s;
    s.a_povm = e;
    s.label_of_a = {0, 1};
    double expected = 0.0;
    for (const auto& c : cond) {
        s.b_povms.push_back(marginal_eigenbasis_povm(c.rho_b).first);
        expected += c.p_a * von_neumann_entropy(c.rho_b);
    }
    const ClassicalInfoTable t = classical_info_table(joint_distribution_conditioned(rho, s));
    CHECK(t.h_b_given_a == Approx(expected).margin(1e-9));
}

TEST_CASE("extreme conditioned strategy reaches H(A)", "[measurement]") {
    Rng rng(7);
    for (int t = 0; t < 5; ++t) {
        const DensityMatrix rho = random_density(2, 2, 4, rng);
        const RankOnePovm e = projective_pair_povm({rng.uniform(0.0, kPi / 2), rng.uniform(0.0, 2 * kPi)});
        ConditionedStrategy s;
        s.a_povm = e;
        s.label_of_a = {0, 1};
        for (const auto& c : conditional_states_B(rho, e))
            s.b_povms.push_back(marginal_eigenbasis_povm(c.rho_b).first);
        const ClassicalInfoTable cond = classical_info_table(joint_distribution_conditioned(rho, s));

        // disjoint per-outcome alphabets make b reveal a: H(A:B) = H(A)
        CHECK(cond.mutual == Approx(cond.h_a).margin(1e-9));

        const RankOnePovm f = projective_pair_povm({rng.uniform(0.0, kPi / 2), rng.uniform(0.0, 2 * kPi)});
        const ClassicalInfoTable flat =
            classical_info_table(joint_distribution_unconditioned(rho, e, f));
        CHECK(cond.mutual >= flat.mutual - 1e-9);
    }
}

TEST_CASE("conditioned strategy can exceed the quantum mutual information", "[measurement]") {
    // I/4 has S(A:B) = 0, yet the extreme strategy extracts H(A) = 1 bit
    CMatrix quarter = CMatrix::identity(4);
    quarter *= cplx(0.25, 0.0);
    const DensityMatrix rho = validate_density_matrix(quarter, 2, 2);
    ConditionedStrategy s;
    s.a_povm = projective_pair_povm({0.0, 0.0});
    s.label_of_a = {0, 1};
    s.b_povms = {projective_pair_povm({0.0, 0.0}), projective_pair_povm({kPi / 4, 0.0})};
    const ClassicalInfoTable t = classical_info_table(joint_distribution_conditioned(rho, s));
    CHECK(t.mutual == Approx(1.0).margin(1e-10));
}

TEST_CASE("intermediate label maps keep a valid distribution", "[measurement]") {
    Rng rng(8);
    const DensityMatrix rho = random_density(2, 2, 4, rng);
    RankOnePovm trine = symmetric_qubit_povm(SymmetricPovmKind::Trine);
    ConditionedStrategy s;
    s.a_povm = trine;
    s.label_of_a = {0, 0, 1};  // coarse-grained: two of three outcomes share a measurement
    s.b_povms = {projective_pair_povm({0.2, 0.4}), projective_pair_povm({1.1, 3.0})};
    s.validate();
    const JointDistribution jd = joint_distribution_conditioned(rho, s);
    CHECK(jd.n_a() == 3);
    CHECK(jd.n_b() == 4);
    // outcomes outside the block of c(a) carry zero probability
    CHECK(jd(2, 0) == 0.0);
    CHECK(jd(2, 1) == 0.0);
    CHECK(jd(0, 2) == 0.0);
}

TEST_CASE("symmetric qubit POVMs", "[measurement]") {
    const RankOnePovm trine = symmetric_qubit_povm(SymmetricPovmKind::Trine);
    CHECK(trine.size() == 3);
    CHECK(povm_sum(trine).max_abs_diff(CMatrix::identity(2)) < 1e-12);
    Vec3 sum{};
    for (const auto& el : trine.elements) {
        CHECK(el.weight == Approx(2.0 / 3).margin(1e-12));
        sum = sum + el.weight / 2.0 * bloch_of_ket(el.ket);
    }
    CHECK(norm(sum) < 1e-12);  // completeness forces sum q_a m_a = 0

    const RankOnePovm tetra = symmetric_qubit_povm(SymmetricPovmKind::Tetrahedron);
    CHECK(tetra.size() == 4);
    CHECK(povm_sum(tetra).max_abs_diff(CMatrix::identity(2)) < 1e-12);
    for (int a = 0; a < 4; ++a) {
        CHECK(tetra.elements[a].weight == Approx(0.5).margin(1e-12));
        for (int b = a + 1; b < 4; ++b)
            CHECK(dot(bloch_of_ket(tetra.elements[a].ket), bloch_of_ket(tetra.elements[b].ket)) ==
                  Approx(-1.0 / 3).margin(1e-12));
    }

    const auto verts = symmetric_bloch_vertices(SymmetricPovmKind::Trine);
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            CHECK(dot(verts[a], verts[b]) == Approx(-0.5).margin(1e-12));
}

TEST_CASE("POVM validation catches broken inputs", "[measurement]") {
    RankOnePovm bad;
    bad.dim = 2;
    bad.elements = {{1.0, Ket{1.0, 0.0}}, {0.5, Ket{0.0, 1.0}}};  // weights do not resolve identity
    CHECK_THROWS_AS(bad.validate(), Error);

    const DensityMatrix bell = bell_state(BellKind::PhiPlus);
    RankOnePovm wrong_dim;
    wrong_dim.dim = 3;
    wrong_dim.elements = {{1.0, Ket{1.0, 0.0, 0.0}}};
    CHECK_THROWS_AS(joint_distribution_unconditioned(bell, wrong_dim, wrong_dim), Error);
}

TEST_CASE("fine graining never decreases classical mutual information", "[measurement][property]") {
    const CheckReport rep = check_fine_graining(100, 99);
    INFO("violations=" << rep.violations << " worst=" << rep.worst_excess);
    CHECK(rep.passed());
}
