#include "painleve_d/painleve.hpp"

namespace pd {

NodeConvention NodeConvention::parse(const std::string& name) {
    if (name == "as-printed") return {false, false};
    if (name == "swap01") return {true, false};
    if (name == "swapTail") return {false, true};
    if (name == "swapBoth") return {true, true};
    throw std::invalid_argument("unknown convention \"" + name + "\"");
}

std::string NodeConvention::name() const {
    if (swap01 && swapTail) return "swapBoth";
    if (swap01) return "swap01";
    if (swapTail) return "swapTail";
    return "as-printed";
}

std::vector<NodeConvention> all_conventions() {
    return {{false, false}, {true, false}, {false, true}, {true, true}};
}

}  // namespace pd
