// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace sharesim
{

// Error codes shared across the library. Crypto failures deliberately funnel
// into IntegrityError: a wrong key and a tampered ciphertext must be
// indistinguishable to the caller.
enum class Err
{
    ParameterError,
    IntegrityError,
    NotARecipient,
    SenderSignatureInvalid,
    UsageViolation,
    DuplicateUser,
    UnknownUser,
    UnknownBlob,
    OwnerNotMember,
    UnknownLink,
    BadPassword,
    ConfigError,
};

const char* err_name(Err e);

class SimError : public std::runtime_error
{
  public:
    SimError(Err code, const std::string& msg)
        : std::runtime_error(std::string(err_name(code)) + ": " + msg),
          m_code(code)
    {
    }

    Err code() const
    {
        return m_code;
    }

  private:
    Err m_code;
};

} // namespace sharesim
