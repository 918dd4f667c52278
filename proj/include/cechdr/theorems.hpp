#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cechdr/derham.hpp"
#include "cechdr/geometry.hpp"

namespace cechdr {

enum class Verdict { Pass, Fail, Unstabilized };

std::string verdict_name(Verdict v);

// Primality of the input ideal is a user assertion: every engine quantity is
// well-defined for arbitrary ideals, but the statement being checked only
// covers primes, so a verdict on a non-prime input may be vacuous.
struct VerificationReport {
    std::string statement;
    Verdict verdict = Verdict::Unstabilized;
    std::string detail;
    std::vector<std::pair<std::string, long long>> quantities;
    std::optional<DeRhamResult> module_result;     // H^g side
    std::optional<DeRhamResult> localized_result;  // localized side (thm 2.6)
    std::optional<GenericLinearForm> form;
    std::optional<CurveGeometry> geometry;
    std::uint64_t seed = 0;
    WindowSchedule schedule;
    bool prime_asserted = true;
};

// chi((H_P^{n-1})_z) - chi(H_P^{n-1}) = deg V(P), for a height n-1 complete
// intersection presentation (generator count is checked against the height).
VerificationReport verify_thm26(const Ideal& P, std::uint64_t seed,
                                const WindowSchedule& schedule, Deadline deadline = {});

// dim H_0(partial; H_P^{n-1}) >= V_inf(C) - 1.
VerificationReport verify_thm34a(const Ideal& P, const WindowSchedule& schedule,
                                 Deadline deadline = {});

// chi(H^{ht P}_P) = 1 for a homogeneous prime with dim R/P = 2 presented as a
// complete intersection.
VerificationReport verify_graded_chi(const Ideal& P, const WindowSchedule& schedule,
                                     Deadline deadline = {});

// chi(N[z, z^-1]) = 0.
VerificationReport verify_laurent_chi(const LocalizedModuleSpec& N,
                                      const WindowSchedule& schedule, Deadline deadline = {});

struct SurfaceInvariants {
    int n = 0;                     // number of variables
    int r = 0;                     // dimension of the projective variety
    std::map<int, long long> s_j;  // H^j = E(R/m)^{s_j}, for j >= n - r
    std::optional<long long> s;    // the single copy count of 4.3/4.7/4.8
};

// Closed-form chi evaluators; formula is one of "4.3", "4.7", "4.8", "5.2".
long long predict_chi(const std::string& formula, const SurfaceInvariants& inv);

}  // namespace cechdr
