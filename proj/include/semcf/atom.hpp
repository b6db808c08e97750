#pragma once

#include <ostream>
#include <string>
#include <tuple>

namespace semcf {

/// Reserved name of the universal atom. It may not be declared as a
/// concept, role, individual or class in any dataset.
inline constexpr const char* kTopName = "TOP";

enum class AtomKind { top, atomic_concept, role, existential };

/// One edit-cost citizen: TOP, an atomic concept, a role, or an
/// existential restriction over a role and a filler concept.
struct Atom {
  AtomKind kind = AtomKind::top;
  std::string name;    // concept name, role name, or role part of an existential
  std::string filler;  // filler concept of an existential; may be "TOP"

  static Atom top() { return Atom{}; }
  static Atom atomic(std::string concept_name) {
    return Atom{AtomKind::atomic_concept, std::move(concept_name), {}};
  }
  static Atom role(std::string role_name) {
    return Atom{AtomKind::role, std::move(role_name), {}};
  }
  static Atom exists(std::string role_name, std::string filler_concept) {
    return Atom{AtomKind::existential, std::move(role_name),
                std::move(filler_concept)};
  }

  bool is_top() const { return kind == AtomKind::top; }

  /// Display form, also used for override matching:
  /// "TOP", "Cat", "eating", "exists:isIn:Forest".
  /// Concept and role names never collide (vocabulary sets are disjoint),
  /// so the bare form is unambiguous within one dataset.
  std::string str() const;

  /// Lossless form with a kind prefix ("c:Cat", "r:eating",
  /// "e:isIn:Forest", "TOP"); used by the cache record stream.
  std::string encode() const;
  static Atom decode(const std::string& text);

  auto tie() const { return std::tie(kind, name, filler); }
  friend bool operator==(const Atom& a, const Atom& b) {
    return a.tie() == b.tie();
  }
  friend bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
  friend bool operator<(const Atom& a, const Atom& b) {
    return a.tie() < b.tie();
  }
};

std::ostream& operator<<(std::ostream& os, const Atom& a);

}  // namespace semcf
