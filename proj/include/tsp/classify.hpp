#pragma once

// Classification of general (possibly non-unital) qubit maps. Complete
// positivity, co-positivity and entanglement breaking come from the Choi
// operator; positivity uses the closed form when one exists and the
// block-positivity oracle otherwise.

#include <vector>

#include "tsp/nonunital.hpp"
#include "tsp/oracle.hpp"
#include "tsp/qubit_maps.hpp"

namespace tsp {

inline ClassificationReport classify(const QubitMap &m, const OracleConfig &cfg = {}) {
    if (m.is_pauli()) return classify(m.as_pauli());

    ClassificationReport r;
    r.unital = is_unital(m);
    r.trace_preserving = is_trace_preserving(m);

    const HermitianOperator omega = choi(m);
    const auto choi_spec = hermitian_spectrum(omega);
    const auto ccp_spec = hermitian_spectrum(choi(compose(QubitMap(PauliMap::transposition()), m)));
    const int reference[] = {1};
    const auto pt_spec = hermitian_spectrum(partial_transpose(omega, reference));
    r.cp = psd_verdict(choi_spec) == PsdVerdict::psd;
    r.ccp = psd_verdict(ccp_spec) == PsdVerdict::psd;
    r.eb = r.cp && psd_verdict(pt_spec) == PsdVerdict::psd;
    r.margins["choi_min_eig"] = choi_spec.front();
    r.margins["ccp_min_eig"] = ccp_spec.front();
    r.margins["choi_pt_min_eig"] = pt_spec.front();

    const auto &e = m.matrix();
    if (m.is_lambda_t_form() && e(0, 0) == 1.0 && e(1, 0) == 0.0 && e(2, 0) == 0.0) {
        const NonUnitalFamilyMap family{e(3, 0), e(1, 1), e(2, 2), e(3, 3)};
        const CriterionVerdict v = classify_nonunital_positive(family);
        r.positive = v.satisfied;
        r.positivity_method = region_of(family) == NonUnitalRegion::boundary ? "nonunital-boundary"
                                                                              : "nonunital-reduction";
        r.margins["positive_slack"] = v.worst_slack;
    } else {
        const BlockPositivityResult bp = block_positivity_min(omega, {0}, cfg);
        r.positive = bp.value >= -kPsdTol;
        r.positivity_method = "block-positivity-oracle";
        r.margins["positive_slack"] = bp.value;
    }
    return r;
}

}  // namespace tsp
