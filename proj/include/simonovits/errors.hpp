#pragma once

#include <stdexcept>
#include <string>

namespace simonovits {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : Error { using Error::Error; };
struct InvalidPartition : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct Inapplicable : Error { using Error::Error; };
struct InternalConsistency : Error { using Error::Error; };
struct ConstructionInfeasible : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

inline void require(bool cond, const std::string& what) {
    if (!cond) throw InvalidInput(what);
}

} // namespace simonovits
