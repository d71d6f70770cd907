#pragma once

#include "gevrey/random.hpp"
#include "gevrey/spectral_grid.hpp"

#include <cstdint>

namespace gevrey {

struct IneqSample {
    FrequencyPoint xi;
    FrequencyPoint eta;
    double sigma = 0.5;
    double K = 2.0;
};

struct IneqReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double constant_used = 0.0;
    double defect = 0.0;  // rhs − lhs
    bool holds = true;
};

/// Relative slack granted to floating-point rounding on tight samples.
inline constexpr double kIneqTolerance = 1e-12;

IneqReport make_report(double lhs, double rhs, double constant);

/// K^σ − (K−1)^σ.
double tri1_constant(double K, double sigma);

/// c′ = max{c^σ − (c−1)^σ, c^σ/(1 + K^{−σ})}, c̃ = (1 + K^{−σ})^{1/σ}, c = √c̃.
///
/// |ξ| ≤ c|ξ−η|: ⟨ξ⟩^σ ≤ c^σ⟨ξ−η⟩^σ and ⟨η⟩ ≥ ⟨ξ−η⟩/K give the second branch.
/// |ξ| ≥ c|ξ−η|: tri1 with ratio c, roles of ξ and η swapped, gives the first.
double tri2_constant(double K, double sigma);

/// The variant whose first branch uses c̃ instead of c. It leaves the band
/// c < |ξ|/|ξ−η| < c̃ uncovered and fails on some samples; kept for the
/// witness test.
double tri2_constant_as_stated(double K, double sigma);

/// (m/(σe))^{m/σ}, and 1 for m = 0: the maximum of x^m e^{−x^σ} over x > 0
/// once τ is scaled out.
double poly_gevrey_constant(double m, double sigma);

bool in_tri1_region(const FrequencyPoint& xi, const FrequencyPoint& eta, double K);
bool in_tri2_region(const FrequencyPoint& xi, const FrequencyPoint& eta, double K);

/// |⟨ξ⟩^σ − ⟨η⟩^σ| ≤ (K^σ − (K−1)^σ)⟨ξ−η⟩^σ on |ξ−η| ≤ |η|/K.
IneqReport check_tri1(const IneqSample& sample);
/// ⟨ξ⟩^σ ≤ ⟨η⟩^σ + c′⟨ξ−η⟩^σ on |ξ−η|/K ≤ |η| ≤ K|ξ−η|.
IneqReport check_tri2(const IneqSample& sample);
/// check_tri2 with an arbitrary constant in place of c′.
IneqReport check_tri2_with(const IneqSample& sample, double constant);
/// ⟨ξ⟩^m ≤ C(m,σ) τ^{−m/σ} e^{τ⟨ξ⟩^σ}.
IneqReport check_poly_gevrey(const FrequencyPoint& xi, double sigma, double tau, double m);

struct RemarkComparison {
    double paper_constant = 0.0;      // K^σ − (K−1)^σ
    double competing_constant = 0.0;  // σ/(K−1)^{1−σ}
    bool paper_smaller = false;
};

RemarkComparison compare_remark_constants(double K, double sigma);

struct Counterexample {
    bool found = false;
    FrequencyPoint xi;
    FrequencyPoint eta;
    double K = 0.0;
    double constant = 0.0;
    IneqReport report;
};

/// At σ = 1 the first inequality fails for every constant below 1. Searches
/// collinear pairs η = t, ξ = t(1 + 1/K) with growing t until the defect of
/// |⟨ξ⟩ − ⟨η⟩| ≤ c⟨ξ−η⟩ turns negative.
Counterexample find_sigma_one_counterexample(double constant, double K);

enum class InequalityKind { Tri1, Tri2, Poly };

struct SweepSummary {
    long samples = 0;
    long violations = 0;
    double worst_relative_defect = 0.0;  // min over samples of defect / max(1, rhs)
    IneqSample worst;
};

/// In-region random samples: magnitudes log-uniform over [1e−3, 1e5], directions
/// uniform, candidates rejected unless they satisfy the region predicate.
IneqSample draw_tri1_sample(CounterRng& rng, int d, double sigma, double K);
IneqSample draw_tri2_sample(CounterRng& rng, int d, double sigma, double K);

/// n samples of one inequality at fixed (d, σ, K). For Poly the K slot is
/// unused; τ is log-uniform in [1e−2, 10] and m cycles through {0, 1, 2, 4}.
SweepSummary sweep_inequality(InequalityKind kind, long n, int d, double sigma, double K,
                              CounterRng& rng);

}  // namespace gevrey
