#pragma once

#include "qent/linalg.hpp"

#include <stdexcept>
#include <string>

namespace qent {

// Malformed input text or unusable file.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Well-formed input describing an invalid state.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StateFile {
    bool pure = true;
    Dims dims;
    Vec amplitudes;  // pure states
    Mat matrix;      // mixed states

    Mat density() const { return pure ? dm(amplitudes) : matrix; }
};

// JSON schema: {"kind":"pure"|"mixed","dims":[...],"amplitudes":[[re,im],...]}
// or {"kind":"mixed",...,"matrix":[[[re,im],...],...]}. Pure amplitudes must
// be normalized and mixed matrices Hermitian, PSD, unit trace within 1e-8.
StateFile parse_state_json(const std::string& text);
StateFile load_state_file(const std::string& path);

// Named states: ghz[:N[:p]], w[:N], bell, smolin, dur, heisenberg:N:s.
StateFile builtin_state(const std::string& name);

// Resolves "builtin:<name>" or a filesystem path.
StateFile resolve_state(const std::string& spec);

std::string state_to_json(const StateFile& s);

}  // namespace qent
