// Copyright 2026 The pastq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace pastq {

/** Base class for all errors raised by this library. */
class PastqError : public std::runtime_error {
  public:
    explicit PastqError(const std::string &message) : std::runtime_error(message) {}
};

/** Operands act on incompatible subsystem dimension lists. */
class DimensionMismatch : public PastqError {
  public:
    explicit DimensionMismatch(const std::string &message) : PastqError(message) {}
};

/** A matrix required to be Hermitian fails the hermiticity check. */
class NonHermitianInput : public PastqError {
  public:
    NonHermitianInput(const std::string &message, double defect)
        : PastqError(message), defect_(defect) {}
    /** Largest absolute deviation between the matrix and its adjoint. */
    double defect() const { return defect_; }

  private:
    double defect_;
};

/** Every measurement outcome has (numerically) zero probability, so the
 *  conditional distribution is undefined. */
class ImpossiblePostselection : public PastqError {
  public:
    explicit ImpossiblePostselection(const std::string &message) : PastqError(message) {}
};

/** Structured input (JSON file or CLI payload) does not match the schema. */
class SchemaError : public PastqError {
  public:
    explicit SchemaError(const std::string &message) : PastqError(message) {}
};

/** A Fock-space cutoff is too small for the requested squeezing or thermal
 *  occupation to be represented at the required accuracy. */
class TruncationTooSevere : public PastqError {
  public:
    explicit TruncationTooSevere(const std::string &message) : PastqError(message) {}
};

/** A normalisation denominator fell below its floor. */
class SingularDenominator : public PastqError {
  public:
    explicit SingularDenominator(const std::string &message) : PastqError(message) {}
};

/** A tensor-product dimension would overflow the index type. */
class SizeOverflow : public PastqError {
  public:
    explicit SizeOverflow(const std::string &message) : PastqError(message) {}
};

/** The argument of a subsystem permutation is not a permutation. */
class InvalidPermutation : public PastqError {
  public:
    explicit InvalidPermutation(const std::string &message) : PastqError(message) {}
};

/** A quadrature grid fails its own normalisation self-check. */
class GridTooCoarse : public PastqError {
  public:
    explicit GridTooCoarse(const std::string &message) : PastqError(message) {}
};

/** A scalar argument is outside its documented domain. */
class InvalidArgument : public PastqError {
  public:
    explicit InvalidArgument(const std::string &message) : PastqError(message) {}
};

} // namespace pastq
