#pragma once

#include <stdexcept>
#include <string>

namespace monopole {

/* Contract violations in otherwise well-formed requests.  The CLI maps
   these to exit code 2; malformed input files map to InputError and exit
   code 1 instead. */
enum class Errc {
    EdgeLoop,
    NotAutomorphism,
    ArrowInsideOrbit,
    NonInvertibleCartan,
    NoHighestRoot,
    NonpositiveLevel,
    NotFiniteType,
    NotAffineType,
    LevelMismatch,
    NonIntegerResult,
    ShapeMismatch,
    NotDominant,
    NotAffineDominant,
    MissingAlpha,
    NegativeAlpha,
    NotProper,
    Overflow,
    NonpositiveDegree,
    VariableMismatch,
    InsufficientOrder,
    NonComparable,
    MissingEnergyBound,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::EdgeLoop: return "EdgeLoop";
        case Errc::NotAutomorphism: return "NotAutomorphism";
        case Errc::ArrowInsideOrbit: return "ArrowInsideOrbit";
        case Errc::NonInvertibleCartan: return "NonInvertibleCartan";
        case Errc::NoHighestRoot: return "NoHighestRoot";
        case Errc::NonpositiveLevel: return "NonpositiveLevel";
        case Errc::NotFiniteType: return "NotFiniteType";
        case Errc::NotAffineType: return "NotAffineType";
        case Errc::LevelMismatch: return "LevelMismatch";
        case Errc::NonIntegerResult: return "NonIntegerResult";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::NotDominant: return "NotDominant";
        case Errc::NotAffineDominant: return "NotAffineDominant";
        case Errc::MissingAlpha: return "MissingAlpha";
        case Errc::NegativeAlpha: return "NegativeAlpha";
        case Errc::NotProper: return "NotProper";
        case Errc::Overflow: return "Overflow";
        case Errc::NonpositiveDegree: return "NonpositiveDegree";
        case Errc::VariableMismatch: return "VariableMismatch";
        case Errc::InsufficientOrder: return "InsufficientOrder";
        case Errc::NonComparable: return "NonComparable";
        case Errc::MissingEnergyBound: return "MissingEnergyBound";
    }
    return "Unknown";
}

class DomainError : public std::runtime_error {
  public:
    DomainError(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

/* Malformed or unreadable input (bad JSON, schema violations, bad files). */
class InputError : public std::runtime_error {
  public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
    throw DomainError(code, what);
}

inline void require(bool ok, Errc code, const std::string& what) {
    if (!ok) fail(code, what);
}

}  // namespace monopole
