#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "freeprob/cumulants.hpp"
#include "freeprob/fid.hpp"
#include "freeprob/transforms.hpp"

using namespace freeprob;

TEST_CASE("exponent classification reference points") {
    ExponentReport r = classify_exponent(0.6);
    CHECK(r.in_I);
    CHECK(r.interval_n == 1);
    CHECK(r.lower_family);
    CHECK(std::abs(r.theta_alpha - 1.5 * kPi) < 1e-12);

    CHECK_FALSE(classify_exponent(1.5).in_I);   // boundary of the mirrored family
    CHECK_FALSE(classify_exponent(0.75).in_I);  // boundary between components
    CHECK(classify_exponent(1.4).in_I);
    CHECK_FALSE(classify_exponent(0.3).in_I);
    CHECK_FALSE(classify_exponent(1.9).in_I);
    CHECK_THROWS_AS(classify_exponent(1.0), AlphaOne);
}

TEST_CASE("exact rational membership in I") {
    CHECK(exponent_in_I(Rational(3, 5)));        // 0.6
    CHECK_FALSE(exponent_in_I(Rational(3, 4)));  // boundary
    CHECK_FALSE(exponent_in_I(Rational(2, 3)));  // boundary
    CHECK_FALSE(exponent_in_I(Rational(3, 2)));
    CHECK_FALSE(exponent_in_I(Rational(1)));
    CHECK(exponent_in_I(Rational(7, 5)));   // 1.4
    CHECK(exponent_in_I(Rational(7, 12)));  // in (1/2, 7/12, 2/3)
    CHECK_FALSE(exponent_in_I(Rational(7, 10)));
}

TEST_CASE("mirror symmetry of the exponent set") {
    for (int k = 1; k < 2000; ++k) {
        if (k == 1000) continue;
        double a = k / 1000.0;
        bool in1 = classify_exponent(a).in_I;
        bool in2 = classify_exponent(2.0 - a).in_I;
        CHECK(in1 == in2);
        // double route agrees with the exact rational route
        CHECK(in1 == exponent_in_I(Rational(k, 1000)));
    }
}

TEST_CASE("region classifier on the reference families") {
    CHECK(region_classifier(Dist::beta(Rational(2), Rational(3))).status == FidStatus::KnownFID);
    FidVerdict v = region_classifier(Dist::beta(Rational(3, 5), Rational(5)));
    CHECK(v.status == FidStatus::CertifiedNotFID);
    CHECK(v.reason == FidReason::ExponentInI);
    FidVerdict w = region_classifier(Dist::beta(Rational(11, 20), Rational(11, 20)));
    CHECK(w.status == FidStatus::CertifiedNotFID);
    CHECK(w.reason == FidReason::SubordinationEndpoint);

    // student t ranges: (1/2,2] and [2n+1/4, 2n+2]
    CHECK(region_classifier(Dist::student_t(Rational(3))).status == FidStatus::KnownFID);
    CHECK(region_classifier(Dist::student_t(Rational(2))).status == FidStatus::KnownFID);
    CHECK(region_classifier(Dist::student_t(Rational(21, 10))).status ==
          FidStatus::Inconclusive);
    CHECK(region_classifier(Dist::student_t(Rational(17, 4))).status == FidStatus::KnownFID);
    CHECK(region_classifier(Dist::student_t(Rational(33, 8))).status ==
          FidStatus::Inconclusive);  // 4.125 < 4.25

    CHECK(region_classifier(Dist::beta_prime(Rational(1, 2), Rational(9))).status ==
          FidStatus::KnownFID);
    CHECK(region_classifier(Dist::beta_prime(Rational(7, 5), Rational(1))).status ==
          FidStatus::CertifiedNotFID);
    CHECK(region_classifier(Dist::beta_prime(Rational(1), Rational(1))).status ==
          FidStatus::Inconclusive);
    CHECK(region_classifier(Dist::gamma_dist(Rational(1))).status == FidStatus::Inconclusive);
    CHECK(region_classifier(Dist::gamma_dist(Rational(3, 5))).status ==
          FidStatus::CertifiedNotFID);
    CHECK(region_classifier(Dist::inverse_gamma(Rational(1, 4))).status == FidStatus::KnownFID);
    CHECK(region_classifier(Dist::ultraspherical(Rational(1))).status == FidStatus::KnownFID);
    CHECK(region_classifier(Dist::ultraspherical(Rational(1, 2))).status ==
          FidStatus::CertifiedNotFID);
    CHECK(region_classifier(Dist::gaussian()).status == FidStatus::KnownFID);
    // affine wrappers classify through the base law
    CHECK(region_classifier(Dist::dilate(Dist::gaussian(), Rational(3))).status ==
          FidStatus::KnownFID);
}

TEST_CASE("classifier boundary thresholds are exact") {
    CHECK(region_classifier(Dist::beta(Rational(3, 2), Rational(3, 2))).status ==
          FidStatus::KnownFID);
    CHECK(region_classifier(Dist::beta(Rational(1, 2), Rational(3, 2))).status ==
          FidStatus::KnownFID);  // p+q = 2 inclusive
    // just inside: p = 149/100 lands in the exceptional set
    FidVerdict v = region_classifier(Dist::beta(Rational(149, 100), Rational(3, 2)));
    CHECK(v.status == FidStatus::CertifiedNotFID);
    CHECK(v.reason == FidReason::ExponentInI);
    // beta prime thresholds
    CHECK(region_classifier(Dist::beta_prime(Rational(3, 2), Rational(1))).status ==
          FidStatus::KnownFID);
}

TEST_CASE("known and certified regions never overlap on the parameter grid") {
    int known = 0, certified = 0, inconclusive = 0;
    for (int i = 1; i <= 200; ++i) {
        for (int j = 1; j <= 200; ++j) {
            Rational p(i, 50), q(j, 50);  // grid over (0, 4]^2
            FidVerdict v = region_classifier(Dist::beta(p, q));
            switch (v.status) {
                case FidStatus::KnownFID: ++known; break;
                case FidStatus::CertifiedNotFID: ++certified; break;
                case FidStatus::Inconclusive: ++inconclusive; break;
            }
        }
    }
    // every grid point got exactly one verdict, and all three kinds occur
    CHECK(known + certified + inconclusive == 200 * 200);
    CHECK(known > 0);
    CHECK(certified > 0);
    CHECK(inconclusive > 0);
}

TEST_CASE("hankel and region verdicts agree where both speak") {
    for (int q = 1; q <= 15; ++q) {
        FidVerdict h = hankel_fid_test(Dist::beta(Rational(1), Rational(q)), 16);
        CHECK(h.status == FidStatus::CertifiedNotFID);
        FidVerdict r = region_classifier(Dist::beta(Rational(1), Rational(q)));
        if (r.status != FidStatus::Inconclusive) CHECK(r.status == h.status);
    }
}

TEST_CASE("endpoint vanishing of the reciprocal transform for small beta") {
    FidVerdict v = subordination_endpoint_test(Dist::beta(Rational(1, 2), Rational(1, 2)));
    CHECK(v.status == FidStatus::CertifiedNotFID);
    CHECK(v.reason == FidReason::SubordinationEndpoint);

    FidVerdict u = subordination_endpoint_test(Dist::beta(Rational(1), Rational(1)));
    CHECK(u.status == FidStatus::CertifiedNotFID);

    FidVerdict m = subordination_endpoint_test(Dist::beta(Rational(4, 5), Rational(3, 5)));
    CHECK(m.status == FidStatus::CertifiedNotFID);

    CHECK_THROWS_AS(subordination_endpoint_test(Dist::beta(Rational(2), Rational(2))),
                    std::invalid_argument);
}

TEST_CASE("student t boundary values") {
    // q = 2: the right-side boundary on the lower imaginary axis is purely imaginary
    ReIm v = t_boundary_signs(2.0, TBoundaryRegion::PosImagAxisBelowMinus1, -2.0);
    CHECK(std::abs(v.re) < 1e-12);

    // q = 2 at x = -1: Im limit is -1/2 by the closed form
    ReIm w = t_boundary_signs(2.0, TBoundaryRegion::NegRealLine, -1.0);
    CHECK(std::abs(w.im - (-0.5)) < 1e-12);

    // against the one-sided limits of the continued transform
    Dist t16 = Dist::student_t(Rational(8, 5));
    for (double y : {-1.5, -2.0, -3.0}) {
        ReIm f = t_boundary_signs(1.6, TBoundaryRegion::PosImagAxisBelowMinus1, y);
        cplx g1 = cauchy_G_continued(t16, {1e-6, y}).value;
        cplx g2 = cauchy_G_continued(t16, {5e-7, y}).value;
        cplx lim = 2.0 * g2 - g1;
        CHECK(std::abs(lim.real() - f.re) < 1e-6);
        CHECK(std::abs(lim.imag() - f.im) < 1e-6);
    }
    for (double x : {-0.5, -1.0, -2.5}) {
        ReIm f = t_boundary_signs(1.6, TBoundaryRegion::NegRealLine, x);
        cplx g1 = cauchy_G_continued(t16, {x, -1e-6}).value;
        cplx g2 = cauchy_G_continued(t16, {x, -5e-7}).value;
        cplx lim = 2.0 * g2 - g1;
        CHECK(std::abs(lim.real() - f.re) < 1e-6);
        CHECK(std::abs(lim.imag() - f.im) < 1e-6);
    }
    for (double y : {-0.3, -0.6, -0.9}) {
        ReIm f = t_boundary_signs(1.6, TBoundaryRegion::LeftImagSegment, y);
        cplx g1 = cauchy_G_continued(t16, {-1e-6, y}).value;
        cplx g2 = cauchy_G_continued(t16, {-5e-7, y}).value;
        cplx lim = 2.0 * g2 - g1;
        CHECK(std::abs(lim.real() - f.re) < 1e-6);
        CHECK(std::abs(lim.imag() - f.im) < 1e-6);
    }

    // sign conditions hold for q = 2 and break for q = 2.2 near the branch point
    bool ok2 = true;
    for (double y = -3.0; y < -1.02; y += 0.1) {
        ReIm f = t_boundary_signs(2.0, TBoundaryRegion::PosImagAxisBelowMinus1, y);
        if (!(f.re <= 1e-9 || f.im >= -1e-9)) ok2 = false;
    }
    CHECK(ok2);
    bool violated = false;
    for (double y = -1.5; y < -1.01; y += 0.02) {
        ReIm f = t_boundary_signs(2.2, TBoundaryRegion::PosImagAxisBelowMinus1, y);
        if (f.re > 1e-9 && f.im < -1e-9) violated = true;
    }
    CHECK(violated);
}
