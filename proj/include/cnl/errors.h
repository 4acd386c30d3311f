// Copyright 2026 The CNL Engine Authors.
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

// Error types shared across the pipeline.

#ifndef CNL_ERRORS_H_
#define CNL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace cnl {

// A caller broke an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An anaphor has no compatible antecedent in the discourse unit.
class UnresolvedAnaphor : public std::runtime_error {
 public:
  UnresolvedAnaphor(std::string anaphor, const std::string& message)
      : std::runtime_error(message), anaphor_(std::move(anaphor)) {}
  const std::string& anaphor() const { return anaphor_; }

 private:
  std::string anaphor_;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cnl

#endif  // CNL_ERRORS_H_
