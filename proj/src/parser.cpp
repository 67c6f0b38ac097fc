// Copyright 2026 The etskin Authors
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

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <system_error>

#include "etskin/errors.hpp"
#include "etskin/ets.hpp"

namespace etskin {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

// Recursive descent over the grammar
//   ets  := term (ws term)* | ""
//   term := axis "(" arg ")"
//   arg  := number ["deg"] | ["-"] "q" uint
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ETS parse() {
    std::vector<ElementaryTransform> out;
    std::vector<std::size_t> joint_offsets;  // offset where each q<j> was written
    skip_space();
    while (!at_end()) {
      if (!out.empty()) {
        if (!had_space_) fail("expected whitespace between terms");
      }
      std::size_t joint_offset = pos_;
      out.push_back(term(joint_offset));
      if (out.back().is_joint()) {
        const std::size_t j = out.back().joint().index;
        if (j < joint_offsets.size() && joint_offsets[j] != kUnset) {
          fail_at(joint_offset, "duplicate joint index q" + std::to_string(j));
        }
        if (j >= joint_offsets.size()) joint_offsets.resize(j + 1, kUnset);
        joint_offsets[j] = joint_offset;
      }
      had_space_ = skip_space();
    }
    for (std::size_t j = 0; j < joint_offsets.size(); ++j) {
      if (joint_offsets[j] == kUnset) {
        // Point at the first index that skipped over q<j>.
        std::size_t at = text_.size();
        for (std::size_t k = j + 1; k < joint_offsets.size(); ++k) {
          if (joint_offsets[k] != kUnset) at = std::min(at, joint_offsets[k]);
        }
        fail_at(at, "joint indices must be contiguous from q0; q" + std::to_string(j) +
                        " is missing");
      }
    }
    return ETS(std::move(out));
  }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }
  [[noreturn]] static void fail_at(std::size_t at, const std::string& msg) {
    throw ParseError(at, msg);
  }

  bool skip_space() {
    const std::size_t start = pos_;
    while (!at_end() && is_space(text_[pos_])) ++pos_;
    return pos_ != start;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Axis axis() {
    if (pos_ + 2 > text_.size()) fail("unknown axis tag");
    const char kind = lower(text_[pos_]);
    const char dir = lower(text_[pos_ + 1]);
    int idx = -1;
    if (dir == 'x') idx = 0;
    if (dir == 'y') idx = 1;
    if (dir == 'z') idx = 2;
    if ((kind != 't' && kind != 'r') || idx < 0) {
      fail("unknown axis tag '" + std::string(text_.substr(pos_, 2)) + "'");
    }
    pos_ += 2;
    static constexpr Axis kTrans[] = {Axis::TX, Axis::TY, Axis::TZ};
    static constexpr Axis kRot[] = {Axis::RX, Axis::RY, Axis::RZ};
    return kind == 't' ? kTrans[idx] : kRot[idx];
  }

  ElementaryTransform term(std::size_t& joint_offset) {
    ElementaryTransform et;
    et.axis = axis();
    skip_space();
    expect('(');
    skip_space();
    joint_offset = pos_;
    et.param = arg(et.axis);
    skip_space();
    expect(')');
    return et;
  }

  EtParam arg(Axis axis) {
    const std::size_t start = pos_;
    std::size_t p = pos_;
    if (p < text_.size() && text_[p] == '-') ++p;
    if (p < text_.size() && lower(text_[p]) == 'q') {
      pos_ = p + 1;
      const std::size_t digits = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (pos_ == digits) fail("expected joint index after 'q'");
      std::size_t index = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, index);
      if (ec != std::errc()) fail_at(digits, "joint index out of range");
      return Joint{index, text_[start] == '-'};
    }
    return constant(axis);
  }

  EtParam constant(Axis axis) {
    const std::size_t start = pos_;
    while (!at_end()) {
      const char c = peek();
      const bool exp_sign =
          (c == '+' || c == '-') && pos_ > start && lower(text_[pos_ - 1]) == 'e';
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || lower(c) == 'e' ||
          exp_sign || (c == '-' && pos_ == start)) {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start) fail("malformed number");
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      fail_at(start, "malformed number '" + std::string(first, last) + "'");
    }
    if (pos_ + 3 <= text_.size() && lower(text_[pos_]) == 'd' &&
        lower(text_[pos_ + 1]) == 'e' && lower(text_[pos_ + 2]) == 'g') {
      if (!is_rotation(axis)) fail("'deg' is only valid on rotations");
      pos_ += 3;
      value = value * std::numbers::pi / 180.0;
    }
    return Constant{value};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  bool had_space_ = true;
};

}  // namespace

ETS parse_ets(std::string_view text) { return Parser(text).parse(); }

std::string format_ets(const ETS& ets) {
  std::string out;
  for (const auto& et : ets.transforms()) {
    if (!out.empty()) out += ' ';
    out += axis_name(et.axis);
    out += '(';
    if (et.is_joint()) {
      if (et.joint().flipped) out += '-';
      out += 'q';
      out += std::to_string(et.joint().index);
    } else {
      out += format_number(std::get<Constant>(et.param).value);
    }
    out += ')';
  }
  return out;
}

}  // namespace etskin
