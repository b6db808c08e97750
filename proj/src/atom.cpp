#include "semcf/atom.hpp"

#include "semcf/errors.hpp"

namespace semcf {

std::string Atom::str() const {
  switch (kind) {
    case AtomKind::top:
      return kTopName;
    case AtomKind::atomic_concept:
    case AtomKind::role:
      return name;
    case AtomKind::existential:
      return "exists:" + name + ":" + filler;
  }
  return {};
}

std::string Atom::encode() const {
  switch (kind) {
    case AtomKind::top:
      return kTopName;
    case AtomKind::atomic_concept:
      return "c:" + name;
    case AtomKind::role:
      return "r:" + name;
    case AtomKind::existential:
      return "e:" + name + ":" + filler;
  }
  return {};
}

Atom Atom::decode(const std::string& text) {
  if (text == kTopName) return top();
  if (text.size() < 2 || text[1] != ':')
    throw Error(Errc::parse, "bad atom encoding: " + text);
  const std::string body = text.substr(2);
  switch (text[0]) {
    case 'c':
      return atomic(body);
    case 'r':
      return role(body);
    case 'e': {
      auto sep = body.find(':');
      if (sep == std::string::npos || sep == 0 || sep + 1 == body.size())
        throw Error(Errc::parse, "bad existential encoding: " + text);
      return exists(body.substr(0, sep), body.substr(sep + 1));
    }
    default:
      throw Error(Errc::parse, "bad atom encoding: " + text);
  }
}

std::ostream& operator<<(std::ostream& os, const Atom& a) {
  return os << a.str();
}

}  // namespace semcf
