#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gue {

struct QuickCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Fast checks of definitional identities (seconds in total).
std::vector<QuickCheck> run_quick_checks(std::ostream& log);

}  // namespace gue
