#pragma once

#include "meb/chargroup.hpp"
#include "meb/exact.hpp"
#include "meb/meb.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace meb::io {

class ParseError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class GeneratorKind { character, dft, hadamard, custom };

struct Provenance {
    GeneratorKind kind = GeneratorKind::custom;
    std::optional<Decomposition> decomposition;

    bool operator==(const Provenance&) const = default;
};

struct GeneratorFile {
    ExponentMatrix entries;
    std::optional<Provenance> provenance;
};

std::string to_string(GeneratorKind kind);
GeneratorKind parse_kind(const std::string& text);

/// Text form of a generator file.
std::string generator_to_text(const ExponentMatrix& e, const std::optional<Provenance>& provenance);
/// Validates the grid; with verify set, also requires a Zeilinger matrix.
GeneratorFile generator_from_text(const std::string& text, bool verify = true, Tolerance tol = {});

GeneratorFile read_generator(const std::string& path, bool verify = true, Tolerance tol = {});
void write_generator(const ExponentMatrix& e, const std::optional<Provenance>& provenance, const std::string& path);

/// Basis dump: every state as (re, im) pairs, plus the generator when known.
std::string basis_to_text(const MebBasis& basis, const std::optional<Provenance>& provenance = std::nullopt);
MebBasis basis_from_text(const std::string& text, Tolerance tol = {});
MebBasis read_basis(const std::string& path, Tolerance tol = {});
void write_basis(const MebBasis& basis, const std::optional<Provenance>& provenance, const std::string& path);

/// Environment variable consulted when --tol is absent.
inline constexpr const char* kToleranceEnv = "MEBTOOL_TOL";

namespace exit_code {
inline constexpr int success = 0;
inline constexpr int inequivalent = 1;
inline constexpr int usage = 2;
inline constexpr int discrepancy = 3;
} // namespace exit_code

/// Runs one command line (without the program name) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace meb::io
