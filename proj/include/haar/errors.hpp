#pragma once

#include <stdexcept>
#include <string>

namespace haar {

// Every failure raised by the library derives from haar::error and carries a
// stable name, which the command line front end prints on standard error.
class error : public std::runtime_error {
public:
    error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define HAAR_DEFINE_ERROR(Type)                                            \
    class Type : public error {                                            \
    public:                                                                \
        explicit Type(const std::string& what) : error(#Type, what) {}     \
    }

HAAR_DEFINE_ERROR(DivisionByIntervalContainingZero);
HAAR_DEFINE_ERROR(DomainError);
HAAR_DEFINE_ERROR(NoConvergence);
HAAR_DEFINE_ERROR(EffortExceeded);
HAAR_DEFINE_ERROR(InvalidCayleyTable);
HAAR_DEFINE_ERROR(KappaUnavailable);
HAAR_DEFINE_ERROR(PackingExhausted);
HAAR_DEFINE_ERROR(InvalidBound);
HAAR_DEFINE_ERROR(InvalidArgument);
HAAR_DEFINE_ERROR(Unsupported);

#undef HAAR_DEFINE_ERROR

/// True for the errors that mean "the computation gave up" rather than
/// "the request was malformed".
inline bool is_computation_failure(const error& e) {
    const auto& n = e.name();
    return n == "NoConvergence" || n == "EffortExceeded" || n == "PackingExhausted" ||
           n == "KappaUnavailable" || n == "InvalidBound";
}

}  // namespace haar
