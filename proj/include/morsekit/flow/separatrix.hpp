#pragma once

#include "morsekit/flow/trace.hpp"

namespace morsekit::flow {

/// One branch of a saddle's descending (along vectors[0]) or ascending (along
/// vectors[1]) disc, seeded at offset epsilon from the lift of the saddle at
/// `at`. With `span` set the trace also stops `span` below (above) the saddle's
/// value; it is needed on circle-valued scenes where descents never end.
Separatrix trace_branch(const Scene& scene, std::size_t saddle, Direction dir, int branch, std::optional<double> span = std::nullopt,
                        const Shift& at = {0, 0});

/// Sign of the flow line from the descending-disc orientation of the upper
/// endpoint to the lower one; 0 if the branch does not end at an extremum of
/// the right index.
///   saddle -> minimum along branch b: b.
///   maximum m -> saddle q, arriving along q's ascending branch s:
///   or(m) * sign det(-s f_q, e_q).
int separatrix_sign(const Scene& scene, const Separatrix& s);

/// Both branches in both directions for every saddle, signed.
std::vector<Separatrix> extract_separatrices(const Scene& scene, std::optional<double> span = std::nullopt);

struct TransversalityDiagnosis {
    bool pass = true;
    /// (upper saddle, lower saddle) pairs joined by a flow line.
    std::vector<std::pair<std::string, std::string>> connections;
};

TransversalityDiagnosis check_almost_transversality(const Scene& scene, const std::vector<Separatrix>& separatrices);
TransversalityDiagnosis check_almost_transversality(const Scene& scene);

} // namespace morsekit::flow
