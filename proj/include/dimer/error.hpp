#pragma once

#include <stdexcept>
#include <string>

namespace dimer {

// Domain error with a machine-readable kind (NonBipartite, WrongCount, ...)
// plus a human-readable detail string. CLI serializes both.
class Error : public std::runtime_error {
public:
    Error(std::string kind, std::string detail)
        : std::runtime_error(kind + ": " + detail),
          kind_(std::move(kind)),
          detail_(std::move(detail)) {}

    const std::string& kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string kind_;
    std::string detail_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& detail) {
    throw Error(kind, detail);
}

inline void require(bool cond, const std::string& kind, const std::string& detail) {
    if (!cond) fail(kind, detail);
}

}  // namespace dimer
