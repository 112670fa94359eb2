#include <catch2/catch.hpp>

#include "qcorr/entropy.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/random.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {
DensityMatrix classically_correlated() {
    CMatrix m(4);
    m(0, 0) = 0.5;
    m(3, 3) = 0.5;
    return validate_density_matrix(m, 2, 2);
}

DensityMatrix random_product(Rng& rng) {
    const DensityMatrix a = random_density(1, 2, 2, rng);
    const DensityMatrix b = random_density(1, 2, 2, rng);
    return validate_density_matrix(tensor_product(a.mat, b.mat), 2, 2);
}
}  // namespace

TEST_CASE("fast projective-pair statistics match the generic machinery", "[measures]") {
    Rng rng(1);
    for (int t = 0; t < 10; ++t) {
        const DensityMatrix rho = random_density(2, 2, 4, rng);
        const std::vector<double> ang{rng.uniform(0.0, kPi / 2), rng.uniform(0.0, 2 * kPi),
                                      rng.uniform(0.0, kPi / 2), rng.uniform(0.0, 2 * kPi)};
        const auto fast = detail::pair_probs(rho, ang[0], ang[1], ang[2], ang[3]);
        const JointDistribution jd = joint_distribution_unconditioned(
            rho, projective_pair_povm({ang[0], ang[1]}), projective_pair_povm({ang[2], ang[3]}));
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                CHECK(fast[2 * a + b] == Approx(jd(a, b)).margin(1e-12));

        const ClassicalInfoTable ct = classical_info_table(jd);
        CHECK(detail::pair_mutual(rho, ang) == Approx(ct.mutual).margin(1e-12));
        CHECK(detail::pair_joint_entropy(rho, ang) == Approx(ct.h_ab).margin(1e-12));
        CHECK(detail::pair_cond_entropy_b_given_a(rho, ang) == Approx(ct.h_b_given_a).margin(1e-12));

        // conditional-entropy fast path against conditional_states_B
        const auto cond = conditional_states_B(rho, projective_pair_povm({ang[0], ang[1]}));
        double avg = 0.0;
        for (const auto& c : cond) avg += c.p_a * von_neumann_entropy(c.rho_b);
        CHECK(detail::avg_conditional_b_entropy(rho, {ang[0], ang[1]}) == Approx(avg).margin(1e-12));
    }
}

TEST_CASE("Bell state: every measure is one bit, mutual information two", "[measures]") {
    const DensityMatrix bell = bell_state(BellKind::PhiPlus);
    CHECK(quantum_mutual_information(bell) == Approx(2.0).margin(1e-10));

    const MidResult m = mid(bell);
    CHECK(m.degenerate_a);
    CHECK(m.degenerate_b);
    CHECK(m.bits == Approx(1.0).margin(1e-6));

    CHECK(wpm(bell).bits == Approx(1.0).margin(1e-6));
    CHECK(m2b(bell, Direction::AtoB).bits == Approx(1.0).margin(1e-6));
    CHECK(m2b(bell, Direction::BtoA).bits == Approx(1.0).margin(1e-6));
    CHECK(m3b(bell).bits == Approx(1.0).margin(1e-6));
    CHECK(discord(bell, Direction::AtoB).bits == Approx(1.0).margin(1e-6));
    CHECK(discord(bell, Direction::BtoA).bits == Approx(1.0).margin(1e-6));
    CHECK(demon_discord(bell, Direction::AtoB).bits == Approx(1.0).margin(1e-6));
    CHECK(demon_discord(bell, Direction::BtoA).bits == Approx(1.0).margin(1e-6));
}

TEST_CASE("product states carry no nonclassical correlations", "[measures]") {
    Rng rng(2);
    const DensityMatrix prod = random_product(rng);
    const MeasureReport rep = measure_report(prod);
    CHECK(rep.mutual_info == Approx(0.0).margin(1e-9));
    CHECK(std::abs(rep.mid) < 1e-6);
    CHECK(std::abs(rep.wpm) < 1e-6);
    CHECK(std::abs(rep.m2b_ab) < 1e-6);
    CHECK(std::abs(rep.m2b_ba) < 1e-6);
    CHECK(std::abs(rep.discord_ab) < 1e-6);
    CHECK(std::abs(rep.discord_ba) < 1e-6);
    CHECK(std::abs(rep.m3b) < 1e-6);
    CHECK(std::abs(rep.dd_ab) < 1e-6);
    CHECK(std::abs(rep.dd_ba) < 1e-6);
    CHECK(rep.ordering_violations.empty());
}

TEST_CASE("classically correlated state: discord-type measures vanish", "[measures]") {
    const DensityMatrix cc = classically_correlated();
    CHECK(quantum_mutual_information(cc) == Approx(1.0).margin(1e-10));
    CHECK(std::abs(mid(cc).bits) < 1e-6);  // diagonal in a product basis
    CHECK(std::abs(discord(cc, Direction::AtoB).bits) < 1e-6);
    CHECK(std::abs(discord(cc, Direction::BtoA).bits) < 1e-6);
    CHECK(std::abs(demon_discord(cc, Direction::AtoB).bits) < 1e-6);
}

TEST_CASE("product-basis-diagonal states zero the strategy-(a)/(b) measures", "[measures]") {
    Rng rng(3);
    for (int t = 0; t < 5; ++t) {
        const DensityMatrix rho = random_product_basis_diagonal(2, 2, rng);
        CHECK(std::abs(mid(rho).bits) < 1e-6);
        CHECK(std::abs(wpm(rho).bits) < 1e-6);
        CHECK(std::abs(m2b(rho, Direction::AtoB).bits) < 1e-6);
        CHECK(std::abs(m3b(rho).bits) < 1e-6);
    }
}

TEST_CASE("cq states have zero discord conditioning on the classical side", "[measures]") {
    Rng rng(4);
    for (int t = 0; t < 5; ++t) {
        const DensityMatrix rho = random_cq_two_qubit(rng);
        CHECK(std::abs(discord(rho, Direction::BtoA).bits) < 1e-6);
        CHECK(std::abs(demon_discord(rho, Direction::BtoA).bits) < 1e-6);
        CHECK(wpm(rho).bits > 1e-3);  // generically nonzero for separated ensembles
    }
}

TEST_CASE("one-sided marginal degeneracy triggers the optimized mid branch", "[measures]") {
    // rho_A = I/2 (degenerate) while rho_B keeps a gap: half |0><0| x P_z
    // plus half |1><1| x P_x-ish mixture
    CMatrix m(4);
    m(0, 0) = 0.5;  // |00><00|
    CMatrix rho_b(2);
    rho_b(0, 0) = 0.35;
    rho_b(1, 1) = 0.15;
    rho_b(0, 1) = 0.15;
    rho_b(1, 0) = 0.15;
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) m(2 + k, 2 + l) = rho_b(k, l);
    const DensityMatrix rho = validate_density_matrix(m, 2, 2);

    const MidResult mr = mid(rho);
    CHECK(mr.degenerate_a);
    CHECK_FALSE(mr.degenerate_b);
    CHECK(mr.angles.size() == 2);

    const double w = wpm(rho).bits;
    CHECK(mr.bits >= w - 1e-4);
    CHECK(mr.bits <= quantum_mutual_information(rho) + 1e-9);
}

TEST_CASE("pure-state collapse onto the entanglement entropy", "[measures]") {
    Rng rng(5);
    for (int t = 0; t < 8; ++t) {
        const DensityMatrix psi = random_pure(2, 2, rng);
        const double s_a = von_neumann_entropy(partial_trace(psi, Subsystem::A));
        const MeasureReport rep = measure_report(psi);
        CHECK(rep.mutual_info == Approx(2 * s_a).margin(1e-9));
        for (double v : {rep.mid, rep.wpm, rep.m2b_ab, rep.m2b_ba, rep.discord_ab, rep.discord_ba,
                         rep.m3b, rep.dd_ab, rep.dd_ba})
            CHECK(v == Approx(s_a).margin(1e-4));
    }
}

TEST_CASE("ordering array holds on random states", "[measures][slow]") {
    Rng rng(6);
    for (int t = 0; t < 25; ++t) {
        const DensityMatrix rho = random_density(2, 2, 4, rng);
        const MeasureReport rep = measure_report(rho);
        INFO("state " << t);
        CHECK(rep.ordering_violations.empty());
    }
}

TEST_CASE("measures are invariant under local unitaries", "[measures][slow]") {
    Rng rng(7);
    for (int t = 0; t < 3; ++t) {
        const DensityMatrix rho = random_density(2, 2, 4, rng);
        const CMatrix u = tensor_product(random_unitary(2, rng), random_unitary(2, rng));
        const DensityMatrix rot = validate_density_matrix(u * rho.mat * u.adjoint(), 2, 2);

        CHECK(quantum_mutual_information(rot) ==
              Approx(quantum_mutual_information(rho)).margin(1e-9));
        const MidResult mid0 = mid(rho), mid1 = mid(rot);
        if (!mid0.degenerate_a && !mid0.degenerate_b)
            CHECK(mid1.bits == Approx(mid0.bits).margin(1e-9));
        CHECK(wpm(rot).bits == Approx(wpm(rho).bits).margin(1e-3));
        CHECK(discord(rot, Direction::AtoB).bits ==
              Approx(discord(rho, Direction::AtoB).bits).margin(1e-3));
        CHECK(demon_discord(rot, Direction::AtoB).bits ==
              Approx(demon_discord(rho, Direction::AtoB).bits).margin(1e-3));
    }
}

TEST_CASE("swap symmetry of the symmetric measures", "[measures]") {
    Rng rng(8);
    const DensityMatrix rho = random_density(2, 2, 4, rng);
    const DensityMatrix swapped = swap_subsystems(rho);
    CHECK(wpm(swapped).bits == Approx(wpm(rho).bits).margin(1e-4));
    CHECK(m3b(swapped).bits == Approx(m3b(rho).bits).margin(1e-4));
    CHECK(m2b(swapped, Direction::AtoB).bits == Approx(m2b(rho, Direction::BtoA).bits).margin(1e-6));
    CHECK(discord(swapped, Direction::AtoB).bits ==
          Approx(discord(rho, Direction::BtoA).bits).margin(1e-6));
}

TEST_CASE("measure selection skips deselected entries", "[measures]") {
    Rng rng(9);
    const DensityMatrix rho = random_density(2, 2, 4, rng);
    const MeasureSelection sel = MeasureSelection::parse("wpm,discord_ab");
    const MeasureReport rep = measure_report(rho, {}, sel);
    CHECK_FALSE(std::isnan(rep.wpm));
    CHECK_FALSE(std::isnan(rep.discord_ab));
    CHECK(std::isnan(rep.mid));
    CHECK(std::isnan(rep.m3b));
    CHECK(std::isnan(rep.dd_ba));
    CHECK_THROWS_AS(MeasureSelection::parse("nonsense"), Error);
}

TEST_CASE("ordering violations are reported, not clamped", "[measures]") {
    MeasureReport doctored;
    doctored.mutual_info = 0.5;
    doctored.mid = 0.6;  // impossible: mid above mutual information
    doctored.wpm = 0.1;
    doctored.m2b_ab = doctored.m2b_ba = 0.2;
    doctored.discord_ab = doctored.discord_ba = 0.05;
    doctored.m3b = 0.3;
    doctored.dd_ab = doctored.dd_ba = 0.1;
    const auto bad = check_ordering(doctored);
    CHECK(std::find(bad.begin(), bad.end(), "mutual_info>=mid") != bad.end());
}

TEST_CASE("ensemble F function", "[measures]") {
    const CqEnsemble tri = triangle_ensemble();
    // triangle lives in the x-z plane; y is orthogonal to every vertex
    CHECK(ensemble_F(tri, {0, 1, 0}) == Approx(0.0).margin(1e-14));
    CHECK(ensemble_F(tri, -tri.bloch_vectors[0]) == Approx(std::log2(1.5)).margin(1e-12));

    Rng rng(10);
    for (int t = 0; t < 10; ++t) {
        CqEnsemble ens;
        const int n = 2 + static_cast<int>(rng.uniform() * 3.0);
        ens.probs = random_simplex(n, rng);
        for (int j = 0; j < n; ++j)
            ens.bloch_vectors.push_back(
                sphere_point(std::acos(rng.uniform(-1.0, 1.0)), rng.uniform(0.0, 2 * kPi)));
        const Vec3 m = sphere_point(std::acos(rng.uniform(-1.0, 1.0)), rng.uniform(0.0, 2 * kPi));
        double oracle = 0.0;
        for (int j = 0; j < n; ++j) {
            const double x = 1.0 + dot(ens.bloch_vectors[j], m);
            if (x > 1e-14) oracle += ens.probs[j] * x * std::log2(x);
        }
        CHECK(ensemble_F(ens, m) == Approx(oracle).margin(1e-12));
    }
}

TEST_CASE("closed-form cq discord for the triangle and tetrahedron", "[measures]") {
    const CqEnsemble tri = triangle_ensemble();
    CHECK(cq_discord_closed_form(tri, dual_povm(tri)) ==
          Approx(std::log2(4.0 / 3.0)).margin(1e-12));
    CHECK(cq_discord_sphere(tri) == Approx(std::log2(4.0 / 3.0)).margin(1e-9));

    const CqEnsemble tet = tetrahedron_ensemble();
    CHECK(cq_discord_closed_form(tet, dual_povm(tet)) == Approx(std::log2(1.5)).margin(1e-12));
    CHECK(cq_discord_sphere(tet) == Approx(std::log2(1.5)).margin(1e-9));
}

TEST_CASE("projective pairs cannot reach the trine optimum", "[measures]") {
    const CqEnsemble tri = triangle_ensemble();
    const SphereResult proj = cq_projective_classical_info(tri);
    CHECK(proj.best_value < std::log2(1.5) - 1e-3);
}

TEST_CASE("demon discord of the triangle state", "[measures]") {
    const CqEnsemble tri = triangle_ensemble();
    const CqDemonDiscord dd = cq_demon_discord_projective(tri);
    CHECK(dd.dual_candidate == Approx(1.0).margin(1e-12));
    CHECK(dd.projective_candidate ==
          Approx(4.0 / 3.0 - 0.5 * std::log2(3.0)).margin(1e-9));
    CHECK(dd.value == Approx(4.0 / 3.0 - 0.5 * std::log2(3.0)).margin(1e-9));
    // the optimal pair points through a vertex
    double best = 0.0;
    for (const auto& n : tri.bloch_vectors) best = std::max(best, std::abs(dot(dd.projective_axis, n)));
    CHECK(best == Approx(1.0).margin(1e-4));
}

TEST_CASE("cq evaluators require the symmetry precondition", "[measures]") {
    CqEnsemble lopsided;
    lopsided.probs = {0.7, 0.3};
    lopsided.bloch_vectors = {{0, 0, 1}, {0, 0, -1}};
    CHECK_THROWS_AS(cq_discord_closed_form(lopsided, dual_povm(lopsided)), Error);
    CHECK_THROWS_AS(cq_demon_discord_projective(lopsided), Error);
}
