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

// Sentences the grammar must cover, one per construction, including both
// directives and both reported-speech forms.

#ifndef CNL_TESTS_CORPUS_H_
#define CNL_TESTS_CORPUS_H_

#include <string>
#include <vector>

namespace cnl::testing {

inline const std::vector<std::string> kCorpus = {
    "The woman stood in the house.",
    "The boy slept on Monday.",
    "The woman in the car read the message on the sign.",
    "The woman gave the man the document.",
    "Who gave the document to the boy?",
    "What did the woman read?",
    "What did the boy do?",
    "When did she read it?",
    "What region is she in?",
    "Did anyone see the woman?",
    "Show merchant ship situation report on MR41_PAN-EAV",
    "Show commercial aircraft situation report on NAT57_FL310",
    "Michael said that the woman read the document.",
    "Michael told Kerry that the woman read the document.",
    "The old man from Blueland slept.",
    "The man and the woman and the boy slept.",
    "Several friendly women slept.",
    "Some ancient old men slept.",
    "The sick woman 's house stood.",
    "Dale 's car stood.",
    "Women stand.",
    "All women always read all documents.",
    "If all women did not see the car then all women did not see the driver.",
    "The woman did not read the document.",
    "Andrew White is the Prime Minister.",
    "Three men read four documents twice.",
};

// The only corpus sentence with two readings.
inline constexpr const char* kAmbiguousSentence =
    "The woman in the car read the message on the sign.";

}  // namespace cnl::testing

#endif  // CNL_TESTS_CORPUS_H_
