#pragma once

#include <string>

#include "subdiv/checks.hpp"

namespace subdiv {

// One named property checked over many instances; keeps the first witness.
class Claim {
public:
    explicit Claim(std::string name) : name_(std::move(name)) {}
    void require(bool ok, const std::string& where) {
        ++instances_;
        if (!ok && passed_) {
            passed_ = false;
            witness_ = where;
        }
    }
    void equal(const LaurentPoly& got, const LaurentPoly& want, const std::string& where) {
        const bool ok = got == want;
        require(ok, ok ? where : where + ": got " + got.to_string() + ", expected " + want.to_string());
    }
    void report(Report& r) const {
        r.add(name_, passed_, passed_ ? std::to_string(instances_) + (instances_ == 1 ? " instance" : " instances") : witness_);
    }

private:
    std::string name_;
    bool passed_ = true;
    std::size_t instances_ = 0;
    std::string witness_;
};

}  // namespace subdiv
