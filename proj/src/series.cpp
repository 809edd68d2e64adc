#include "kleinian/series.hpp"

namespace kleinian {

Series compose(const GradedPoly& f, int f_cap, const Ring& target,
               const std::map<int, Series>& map) {
    const Ring& src = f.ring();

    // Cap of the result: f's own cap shrinks by the worst valuation ratio
    // among substituted capped symbols; each substituted series contributes
    // its own cap.
    long result_cap = std::numeric_limits<int>::max() / 8;
    // ratio = min over mapped capped symbols of val(g)/wt(sym), as a fraction.
    long rnum = 1, rden = 1;
    bool have_ratio = false;
    for (const auto& [idx, g] : map) {
        const Symbol& s = src.at(size_t(idx));
        if (!s.capped) continue;
        int v = g.val_bound();
        if (v <= 0)
            throw std::invalid_argument("compose: substituted series must have positive valuation");
        result_cap = std::min(result_cap, long(g.cap()));
        if (!have_ratio || long(v) * rden < rnum * long(s.weight)) {
            rnum = v;
            rden = s.weight;
            have_ratio = true;
        }
    }
    if (have_ratio) {
        long scaled = (long(f_cap) * rnum) / rden;
        result_cap = std::min(result_cap, scaled);
    } else {
        result_cap = std::min(result_cap, long(f_cap));
    }
    int cap = int(result_cap);

    std::map<int, GradedPoly> pmap;
    for (const auto& [idx, g] : map) pmap.emplace(idx, g.poly());
    GradedPoly out = f.substituted(target, pmap, cap);
    return Series(std::move(out), cap);
}

}  // namespace kleinian
