#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "macrospin/block_operator.hpp"
#include "macrospin/dense_operator.hpp"
#include "macrospin/ensemble.hpp"
#include "macrospin/gamma.hpp"

using namespace macrospin;

namespace {
const double kPi = std::acos(-1.0);

HalfInt h(long long twice) { return HalfInt::from_twice(twice); }

// dense rotated projector via single-spin matrix exponentials; independent
// of the Wigner explicit-sum route
DenseOperator dense_rotated_projector(const EnsembleSpec& spec, HalfInt m, double beta)
{
    DenseOperator p = projector_tensor_sum(spec, Direction::ez(), m);
    DenseOperator u = dense_rotation(spec, beta);
    return DenseOperator{p.spin_count, p.single_spin, u.mat * p.mat * u.mat.adjoint()};
}
} // namespace

TEST_CASE("collective operator")
{
    EnsembleSpec two_half(2, h(1));
    SECTION("N=2 s=1/2 along z is diag(1, 0, 0, -1)")
    {
        DenseOperator jz = collective_operator(two_half, Direction::ez());
        ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
        expect(0, 0) = 1.0;
        expect(3, 3) = -1.0;
        CHECK((jz.mat - expect).cwiseAbs().maxCoeff() < 1e-14);
    }
    SECTION("spectrum is rotation invariant and traceless")
    {
        Direction tilted(0.6, 0.48, std::sqrt(1.0 - 0.36 - 0.2304));
        DenseOperator jz = collective_operator(two_half, Direction::ez());
        DenseOperator jn = collective_operator(two_half, tilted);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> ez(jz.mat), en(jn.mat);
        CHECK((ez.eigenvalues() - en.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(std::abs(jn.mat.trace()) < 1e-12);
        CHECK((jn.mat - jn.mat.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
    SECTION("dense limit enforced")
    {
        EnsembleSpec big(13, h(1)); // 2^13 > 4096
        CHECK_THROWS_AS(collective_operator(big, Direction::ez()), std::domain_error);
    }
}

TEST_CASE("projector_tensor_sum")
{
    EnsembleSpec spec(2, h(1));
    SECTION("N=2 s=1/2 m=0 projects onto span{|01>, |10>}")
    {
        DenseOperator p = projector_tensor_sum(spec, Direction::ez(), h(0));
        ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
        expect(1, 1) = 1.0;
        expect(2, 2) = 1.0;
        CHECK((p.mat - expect).cwiseAbs().maxCoeff() < 1e-13);
    }
    SECTION("completeness and idempotence for a tilted direction")
    {
        Direction n(0.6, 0.0, 0.8);
        ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
        for (HalfInt m : spec.outcomes()) {
            DenseOperator p = projector_tensor_sum(spec, n, m);
            CHECK((p.mat * p.mat - p.mat).cwiseAbs().maxCoeff() < 1e-10);
            CHECK((p.mat - p.mat.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
            sum += p.mat;
        }
        CHECK((sum - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    }
    SECTION("invalid m rejected")
    {
        CHECK_THROWS_AS(projector_tensor_sum(spec, Direction::ez(), h(1)),
                        std::invalid_argument);
        CHECK_THROWS_AS(projector_tensor_sum(spec, Direction::ez(), h(6)),
                        std::invalid_argument);
    }
}

TEST_CASE("projector_spectral agrees with the tensor-sum construction")
{
    for (long long n_spins : {1LL, 2LL, 3LL, 4LL}) {
        EnsembleSpec spec(n_spins, h(1));
        Direction dir(0.48, 0.6, 0.64);
        for (HalfInt m : spec.outcomes()) {
            DenseOperator a = projector_tensor_sum(spec, dir, m);
            DenseOperator b = projector_spectral(spec, dir, m);
            CHECK((a.mat - b.mat).cwiseAbs().maxCoeff() <= 1e-9);
            CHECK((b.mat * b.mat - b.mat).cwiseAbs().maxCoeff() <= 1e-9);
        }
    }
}

TEST_CASE("projector_spectral rank counts multiplicities")
{
    EnsembleSpec spec(4, h(1));
    for (HalfInt m : spec.outcomes()) {
        DenseOperator p = projector_spectral(spec, Direction::ez(), m);
        double rank = 0;
        for (const auto& [j, lambda] : spec.table().entries)
            if (m.is_projection_of(j)) rank += static_cast<double>(lambda);
        CHECK(std::abs(p.mat.trace().real() - rank) <= 1e-8);
    }
}

TEST_CASE("block projectors")
{
    EnsembleSpec spec(4, h(1));
    SECTION("sum over m is the identity in every block")
    {
        std::vector<BlockOperator> parts;
        for (HalfInt m : spec.outcomes()) parts.push_back(block_projector(spec, m));
        for (std::size_t e = 0; e < parts[0].entries.size(); ++e) {
            ComplexMatrix sum = parts[0].entries[e].block;
            for (std::size_t i = 1; i < parts.size(); ++i) sum += parts[i].entries[e].block;
            long long dim = parts[0].entries[e].j.twice() + 1;
            CHECK((sum - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-15);
        }
    }
    SECTION("weighted trace matches the dense projector trace exactly")
    {
        for (HalfInt m : spec.outcomes()) {
            BlockOperator bp = block_projector(spec, m);
            DenseOperator dp = projector_tensor_sum(spec, Direction::ez(), m);
            CHECK(std::abs(weighted_trace(bp).real() - dp.mat.trace().real()) < 1e-10);
        }
    }
    SECTION("stretched m = Ns lives only in the j = Ns block")
    {
        BlockOperator bp = block_projector(spec, spec.j_max());
        for (const auto& e : bp.entries) {
            double norm = e.block.cwiseAbs().maxCoeff();
            if (e.j == spec.j_max())
                CHECK(norm == 1.0);
            else
                CHECK(norm == 0.0);
        }
    }
    SECTION("projector algebra: P_m P_m' = delta, in both representations")
    {
        for (HalfInt m : spec.outcomes()) {
            for (HalfInt mp : spec.outcomes()) {
                BlockOperator a = block_projector(spec, m);
                BlockOperator b = block_projector(spec, mp);
                for (std::size_t e = 0; e < a.entries.size(); ++e) {
                    ComplexMatrix prod = a.entries[e].block * b.entries[e].block;
                    ComplexMatrix expect =
                        (m == mp) ? a.entries[e].block
                                  : ComplexMatrix::Zero(prod.rows(), prod.cols());
                    CHECK((prod - expect).cwiseAbs().maxCoeff() < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("block rotation")
{
    EnsembleSpec spec(4, h(1));
    SECTION("beta = 0 is the identity in every block")
    {
        BlockOperator rot = block_rotation(spec, 0.0);
        for (const auto& e : rot.entries) {
            long long dim = e.j.twice() + 1;
            CHECK((e.block - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff()
                  < 1e-14);
        }
    }
    SECTION("block-wise orthogonality")
    {
        BlockOperator rot = block_rotation(spec, 1.1);
        for (const auto& e : rot.entries) {
            long long dim = e.j.twice() + 1;
            CHECK((e.block * e.block.adjoint() - ComplexMatrix::Identity(dim, dim))
                      .cwiseAbs()
                      .maxCoeff()
                  <= 1e-10);
        }
    }
    SECTION("rotated projector entries are products of d-matrix elements")
    {
        double beta = kPi / 3;
        HalfInt n = h(2);
        BlockOperator rotated =
            conjugate(block_rotation(spec, beta), block_projector(spec, n));
        for (const auto& e : rotated.entries) {
            if (!n.is_projection_of(e.j)) continue;
            long long dim = e.j.twice() + 1;
            for (long long r = 0; r < dim; ++r) {
                for (long long c = 0; c < dim; ++c) {
                    HalfInt mt = HalfInt::from_twice(e.j.twice() - 2 * r);
                    HalfInt mtp = HalfInt::from_twice(e.j.twice() - 2 * c);
                    double expect = wigner_d_element(e.j, mt, n, beta)
                                    * wigner_d_element(e.j, mtp, n, beta);
                    CHECK(std::abs(e.block(r, c).real() - expect) <= 1e-10);
                    CHECK(std::abs(e.block(r, c).imag()) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("commutator basics")
{
    EnsembleSpec spec(2, h(1));
    DenseOperator a = projector_tensor_sum(spec, Direction::ez(), h(0));
    SECTION("[A, A] = 0")
    {
        CHECK(frobenius_norm(commutator(a, a)) == 0.0);
    }
    SECTION("N=2 s=1/2 accidental commutation of P_0(z) and P_0(x)")
    {
        DenseOperator b = projector_tensor_sum(spec, Direction::ex(), h(0));
        CHECK(frobenius_norm(commutator(a, b)) <= 1e-12);
        CHECK(commutator_norm(spec, h(0), h(0), kPi / 2) <= 1e-12);
    }
    SECTION("ensemble mismatch rejected")
    {
        EnsembleSpec other(3, h(1));
        DenseOperator b = projector_tensor_sum(other, Direction::ez(), h(1));
        CHECK_THROWS_AS(commutator(a, b), std::invalid_argument);
    }
}

TEST_CASE("frobenius norm conventions")
{
    EnsembleSpec spec(3, h(1));
    SECTION("identity norm is sqrt((2s+1)^N)")
    {
        DenseOperator eye{3, h(1), ComplexMatrix::Identity(8, 8)};
        CHECK(frobenius_norm(eye) == Catch::Approx(std::sqrt(8.0)).margin(1e-12));
        // block identity with multiplicity weights agrees
        BlockOperator beye{3, h(1), {}};
        for (const auto& [j, lambda] : spec.table().entries)
            beye.entries.push_back(
                {j, lambda, ComplexMatrix::Identity(j.twice() + 1, j.twice() + 1)});
        CHECK(frobenius_norm(beye) == Catch::Approx(std::sqrt(8.0)).margin(1e-12));
    }
    SECTION("zero operator")
    {
        DenseOperator zero{3, h(1), ComplexMatrix::Zero(8, 8)};
        CHECK(frobenius_norm(zero) == 0.0);
    }
}

TEST_CASE("representation equivalence of commutator norms")
{
    // dense path: Eq.-style tensor sum + single-spin matrix exponentials;
    // block path: direct-sum projectors + Wigner rotation
    for (long long s2 : {1LL, 2LL}) {
        long long n_max = (s2 == 1) ? 6 : 4;
        for (long long n = 2; n <= n_max; n += 2) {
            EnsembleSpec spec(n, h(s2));
            for (double beta : {kPi / 6, kPi / 3, kPi / 2, 2 * kPi / 3}) {
                for (HalfInt m : spec.outcomes()) {
                    for (HalfInt mp : spec.outcomes()) {
                        DenseOperator pz = projector_tensor_sum(spec, Direction::ez(), m);
                        DenseOperator pr = dense_rotated_projector(spec, mp, beta);
                        double dense_norm = frobenius_norm(commutator(pz, pr));
                        double block_norm = commutator_norm(spec, m, mp, beta);
                        CHECK(std::abs(dense_norm - block_norm) <= 1e-8);
                    }
                }
            }
        }
    }
}

TEST_CASE("commutator norm depends on the angle only")
{
    EnsembleSpec spec(3, h(1));
    double beta = 1.05;
    // rotate the canonical (z, xz-plane) pair rigidly to a tilted frame
    Direction n1(0.36, 0.48, 0.8);
    double nx = 0.36, ny = 0.48, nz = 0.8;
    // orthonormalize a helper axis against n1
    double hx = 1.0, hy = 0.0, hz = 0.0;
    double dot = hx * nx + hy * ny + hz * nz;
    hx -= dot * nx;
    hy -= dot * ny;
    hz -= dot * nz;
    double hn = std::sqrt(hx * hx + hy * hy + hz * hz);
    hx /= hn;
    hy /= hn;
    hz /= hn;
    Direction n2(std::cos(beta) * nx + std::sin(beta) * hx,
                 std::cos(beta) * ny + std::sin(beta) * hy,
                 std::cos(beta) * nz + std::sin(beta) * hz);
    REQUIRE(n1.angle_to(n2) == Catch::Approx(beta).margin(1e-12));

    for (HalfInt m : spec.outcomes()) {
        for (HalfInt mp : spec.outcomes()) {
            DenseOperator a = projector_tensor_sum(spec, n1, m);
            DenseOperator b = projector_tensor_sum(spec, n2, mp);
            double general = frobenius_norm(commutator(a, b));
            DenseOperator az = projector_tensor_sum(spec, Direction::ez(), m);
            DenseOperator bx = projector_tensor_sum(spec, Direction::xz(beta), mp);
            double canonical = frobenius_norm(commutator(az, bx));
            CHECK(std::abs(general - canonical) <= 1e-8);
        }
    }
}

TEST_CASE("gamma element closed form")
{
    SECTION("k = k' = m vanishes; antisymmetry")
    {
        CHECK(gamma_element(h(4), h(2), h(0), h(2), h(2), 0.9) == 0.0);
        for (long long k2 = -4; k2 <= 4; k2 += 2) {
            for (long long kp2 = -4; kp2 <= 4; kp2 += 2) {
                double g = gamma_element(h(4), h(2), h(0), h(k2), h(kp2), 0.9);
                double gt = gamma_element(h(4), h(2), h(0), h(kp2), h(k2), 0.9);
                CHECK(g == Catch::Approx(-gt).margin(1e-15));
            }
        }
    }
    SECTION("j=1 m=n=0 beta=pi/2: all Gamma vanish since d^1_00 = P_1(0) = 0")
    {
        for (long long k2 = -2; k2 <= 2; k2 += 2)
            for (long long kp2 = -2; kp2 <= 2; kp2 += 2)
                CHECK(std::abs(gamma_element(h(2), h(0), h(0), h(k2), h(kp2), kPi / 2))
                      <= 1e-15);
    }
    SECTION("matches the directly computed block commutator element, j <= 4")
    {
        for (long long j2 = 0; j2 <= 8; j2 += 2) {
            for (long long m2 = -j2; m2 <= j2; m2 += 2) {
                for (long long n2 = -j2; n2 <= j2; n2 += 2) {
                    double beta = 0.77;
                    RealMatrix d = wigner_d_matrix(h(j2), beta);
                    long long dim = j2 + 1;
                    RealMatrix pm = RealMatrix::Zero(dim, dim);
                    pm((j2 - m2) / 2, (j2 - m2) / 2) = 1.0;
                    RealMatrix pn = RealMatrix::Zero(dim, dim);
                    pn((j2 - n2) / 2, (j2 - n2) / 2) = 1.0;
                    RealMatrix rotated = d * pn * d.transpose();
                    RealMatrix comm = pm * rotated - rotated * pm;
                    for (long long r = 0; r < dim; ++r) {
                        for (long long c = 0; c < dim; ++c) {
                            double g = gamma_element(h(j2), h(m2), h(n2),
                                                     h(j2 - 2 * r), h(j2 - 2 * c), beta);
                            CHECK(std::abs(g - comm(r, c)) <= 1e-10);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("witness construction")
{
    std::vector<HalfInt> j012 = {h(0), h(2), h(4)};
    SECTION("m=n=0, beta=pi/2: P_1 vanishes, P_2 does not -> (2, 2)")
    {
        auto w = witness(h(0), h(0), kPi / 2, j012);
        REQUIRE(w.has_value());
        CHECK(w->j == h(4));
        CHECK(w->k == h(4));
    }
    SECTION("|m| > |n| takes k = -m")
    {
        for (double beta : {0.3, 1.2, 2.8}) {
            auto w = witness(h(2), h(0), beta, {h(0), h(2), h(4), h(6)});
            REQUIRE(w.has_value());
            CHECK(w->j == h(2));
            CHECK(w->k == h(-2));
        }
    }
    SECTION("j_values = {0, 1}, m=n=0, beta=pi/2 has no witness")
    {
        CHECK_FALSE(witness(h(0), h(0), kPi / 2, {h(0), h(2)}).has_value());
    }
    SECTION("soundness: returned pair always gives a nonzero Gamma")
    {
        std::vector<HalfInt> js;
        for (long long j2 = 0; j2 <= 12; j2 += 2) js.push_back(h(j2));
        for (long long m2 = -10; m2 <= 10; m2 += 2) {
            for (long long n2 = -10; n2 <= 10; n2 += 2) {
                for (double beta : {kPi / 5, kPi / 3, 2 * kPi / 5}) {
                    auto w = witness(h(m2), h(n2), beta, js);
                    if (!w) continue;
                    CHECK(w->k != h(m2));
                    double g = gamma_element(w->j, h(m2), h(n2), h(m2), w->k, beta);
                    CHECK(std::abs(g) > 1e-13);
                }
            }
        }
    }
}

TEST_CASE("finite-size breakdown and desk-scale theorem")
{
    SECTION("N=2 accidental zero at pi/2, restored at N=4")
    {
        EnsembleSpec two(2, h(1)), four(4, h(1));
        CHECK(commutator_norm(two, h(0), h(0), kPi / 2) <= 1e-12);
        CHECK(commutator_norm(four, h(0), h(0), kPi / 2) > 1e-8);
    }
    SECTION("N=8 s=1/2: nonzero inside (0, pi), zero at the endpoints")
    {
        EnsembleSpec spec(8, h(1));
        for (HalfInt m : spec.outcomes()) {
            for (HalfInt mp : spec.outcomes()) {
                for (int i = 0; i < 25; ++i) {
                    double beta = kPi / 8.0 + (kPi * 6.0 / 8.0) * i / 24.0;
                    CHECK(commutator_norm(spec, m, mp, beta) > 1e-8);
                }
                CHECK(commutator_norm(spec, m, mp, 0.0) <= 1e-12);
                CHECK(commutator_norm(spec, m, mp, kPi) <= 1e-12);
            }
        }
    }
}
