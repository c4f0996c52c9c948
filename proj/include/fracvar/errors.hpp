// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#ifndef FRACVAR_ERRORS_HPP
#define FRACVAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fracvar {

// Thrown on precondition and invariant violations. The CLI maps these to
// exit code 2; library callers are expected to treat them as programming
// or configuration errors, not recoverable states.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Error(what);
}

}  // namespace fracvar

#endif
