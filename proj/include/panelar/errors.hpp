#ifndef PANELAR_ERRORS_HPP
#define PANELAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace panelar {

// Error classes map one-to-one onto CLI exit codes; see error_exit_code().
enum class ErrorClass {
    Config,    // invalid parameters, malformed configuration
    Data,      // ingested data violates the model contract
    Numerical, // degenerate values that make a statistic undefined
    Io,        // filesystem failures
};

class Error : public std::runtime_error {
  public:
    Error(ErrorClass cls, std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), cls_(cls), name_(std::move(name)) {}

    ErrorClass error_class() const noexcept { return cls_; }
    const std::string& name() const noexcept { return name_; }

  private:
    ErrorClass cls_;
    std::string name_;
};

#define PANELAR_DEFINE_ERROR(NAME, CLASS)                                    \
    struct NAME : Error {                                                    \
        explicit NAME(const std::string& what)                               \
            : Error(ErrorClass::CLASS, #NAME, what) {}                       \
    }

PANELAR_DEFINE_ERROR(InvalidRegime, Config);
PANELAR_DEFINE_ERROR(InvalidInnovation, Config);
PANELAR_DEFINE_ERROR(InvalidParameter, Config);
PANELAR_DEFINE_ERROR(DegenerateT, Config);
PANELAR_DEFINE_ERROR(MissingParameters, Config);
PANELAR_DEFINE_ERROR(InsufficientGrid, Config);
PANELAR_DEFINE_ERROR(ConfigParse, Config);
PANELAR_DEFINE_ERROR(UnknownKey, Config);

PANELAR_DEFINE_ERROR(UnbalancedPanel, Data);
PANELAR_DEFINE_ERROR(MalformedRow, Data);
PANELAR_DEFINE_ERROR(NonzeroInitial, Data);
PANELAR_DEFINE_ERROR(MissingInnovations, Data);
PANELAR_DEFINE_ERROR(WrongRegime, Data);
PANELAR_DEFINE_ERROR(RegimeMismatch, Data);
PANELAR_DEFINE_ERROR(EmptySample, Data);

PANELAR_DEFINE_ERROR(ZeroDenominator, Numerical);
PANELAR_DEFINE_ERROR(ZeroVariance, Numerical);

PANELAR_DEFINE_ERROR(IoFailure, Io);

#undef PANELAR_DEFINE_ERROR

inline int error_exit_code(ErrorClass cls) noexcept {
    switch (cls) {
        case ErrorClass::Config: return 2;
        case ErrorClass::Data: return 3;
        case ErrorClass::Numerical: return 4;
        case ErrorClass::Io: return 5;
    }
    return 1;
}

} // namespace panelar

#endif // PANELAR_ERRORS_HPP
