#include "gbf/common.hpp"

namespace gbf {

std::string rat_str(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

Rat rat_parse(std::string_view s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return Rat(Int(std::string(s)));
        Int p(std::string(s.substr(0, slash)));
        Int q(std::string(s.substr(slash + 1)));
        if (q <= 0) throw validation_error("rational denominator must be positive: " + std::string(s));
        return Rat(p, q);
    } catch (const std::runtime_error&) {
        throw validation_error("malformed rational: " + std::string(s));
    }
}

}  // namespace gbf
