#include "loopfo/tptp.hpp"

#include <cctype>
#include <set>

#include "loopfo/error.hpp"
#include "loopfo/syntax.hpp"

namespace loopfo {

namespace {

std::string tptp_predicate(const std::string& p) {
  std::string out = p;
  if (!std::islower(static_cast<unsigned char>(out[0]))) {
    if (std::isupper(static_cast<unsigned char>(out[0])))
      out[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[0])));
    else
      out = "p" + out;
  }
  return out;
}

std::string tptp_variable(const std::string& v) {
  std::string out = v;
  out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

void emit(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Falsum:
      out += "$false";
      return;
    case Kind::Atom: {
      out += tptp_predicate(f.predicate());
      if (!f.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ',';
          out += tptp_variable(f.args()[i]);
        }
        out += ')';
      }
      return;
    }
    case Kind::Equal:
      out += '(' + tptp_variable(f.args()[0]) + " = " + tptp_variable(f.args()[1]) + ')';
      return;
    case Kind::Not:
      out += '~';
      emit(f.child(), out);
      return;
    case Kind::And:
    case Kind::Or:
      out += '(';
      emit(f.left(), out);
      out += f.is(Kind::And) ? " & " : " | ";
      emit(f.right(), out);
      out += ')';
      return;
    case Kind::Exists:
    case Kind::Forall:
      out += f.is(Kind::Forall) ? "![" : "?[";
      out += tptp_variable(f.var()) + "]: ";
      emit(f.child(), out);
      return;
    case Kind::Claim:
    case Kind::Label:
      throw InputError("TPTP export requires a pure first-order formula");
  }
}

}  // namespace

std::string tptp_term(const Formula& f) {
  if (!is_pure_fo(f)) throw InputError("TPTP export requires a pure first-order formula");
  std::string out;
  emit(f, out);
  return out;
}

std::string export_tptp(const std::string& name, const std::string& role, const Formula& f) {
  std::string body = tptp_term(f);
  const std::set<Variable> fv = free_variables(f);
  std::string closure;
  for (const Variable& v : all_variables(f)) {
    if (!fv.count(v)) continue;
    closure += closure.empty() ? "![" : ",";
    closure += tptp_variable(v);
  }
  if (!closure.empty()) closure += "]: ";
  return "fof(" + name + ", " + role + ", " + closure + body + ").";
}

}  // namespace loopfo
