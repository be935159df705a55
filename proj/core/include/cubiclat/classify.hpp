#pragma once

#include <chrono>
#include <map>

#include "cubiclat/glue.hpp"
#include "cubiclat/local.hpp"
#include "cubiclat/represent.hpp"
#include "cubiclat/shortvec.hpp"

namespace cubiclat {

enum class Verdict { kYes, kNo, kUndecided };
std::string to_string(Verdict v);

struct DecisionReport {
  Verdict verdict = Verdict::kUndecided;
  std::string condition;  // fired paper condition, e.g. "A1", "B", "7.1:5(p=3)"
  std::map<std::string, std::string> invariants;
  std::vector<std::string> notes;
  std::vector<std::string> log;  // per-candidate failures
  std::optional<IVec> cert_vector;
  std::optional<IVec> cert_element;
  std::optional<IMat> cert_gram;  // witness lattice K
};

struct GenusSearchBudget {
  unsigned max_rank = 8;
  Int max_det = 100000;
  Int max_diag = 64;
  long wall_ms = 30000;
};

// Existence of an even lattice with the given signature and discriminant
// form (genus-existence conditions; the Remark 6.3 list in its general form).
struct GenusExistence {
  bool exists = false;
  std::vector<std::string> trace;
};
GenusExistence even_lattice_genus_exists(long t_plus, long t_minus, const FiniteQuadraticForm& q);

// Primitive embedding of a lattice with invariants (t+, t-, q) into the even
// unimodular lattice of signature (22, 22).
GenusExistence embed_into_omega(long t_plus, long t_minus, const FiniteQuadraticForm& q);

// Exhaustive search for even positive-definite lattices of the given rank
// whose discriminant form matches the target; complete for rank <= 5 within
// the reduction bound.
struct GenusSearchResult {
  std::vector<IntLattice> found;
  bool complete = false;
};
GenusSearchResult enumerate_genus(unsigned rank, const FiniteQuadraticForm& target,
                                  bool rootless_only, const GenusSearchBudget& budget);

// Is S isomorphic to A_0(X) of some cubic fourfold?
DecisionReport decide_A0(const IntLattice& S);

// Is T isomorphic to T(X)? Condition A searches for the rootless companion K
// within the budget (or verifies a supplied K); condition B only verifies a
// supplied embedding of U^{23-rho} into T(-1) + L0.
struct TCertificate {
  std::optional<IMat> lattice_K;
  std::optional<IMat> embedding;
};
DecisionReport decide_T(const IntLattice& T, const GenusSearchBudget& budget,
                        const std::optional<TCertificate>& cert = std::nullopt);

// Is A isomorphic to A(X)?
DecisionReport decide_A(const IntLattice& A);

// The even lattice with Gram Q'(x,y) = Q(x,a) Q(y,a) - Q(x,y).
struct EvenCompanion {
  IntLattice lattice;
  bool degenerate = false;
};
EvenCompanion even_companion(const IntLattice& A, const IVec& a);

// Local genus data for Theorem 7.1: signature plus per-prime forms.
struct LocalGenusData {
  long t_plus = 0, t_minus = 0;
  Int abs_det = 1;  // |A|
  struct PrimePart {
    Int p;
    size_t l_p = 0;            // l(A_p)
    PadicLattice kq;           // K(q_p), exceptional candidate already selected
    std::optional<PadicLattice> kq_alt;
    bool exceptional = false;  // p = 2 only
  };
  std::vector<PrimePart> parts;

  static LocalGenusData from_lattice(const IntLattice& L);
  static LocalGenusData from_parts(long t_plus, long t_minus,
                                   const std::vector<PrimePart>& parts);
};
DecisionReport decide_local_rootless(const LocalGenusData& data);

// Lemma 4.13 / Lemma 4.14 wrappers (path A and path B of the A_0 decision)
// with the printed condition labels.
struct EmbedPathResult {
  bool ok = false;
  std::string label;  // A1..A3 / B1..B3 or "A"/"B" for the generalized region
  std::vector<std::string> trace;
};
EmbedPathResult embed_path_A(const IntLattice& S);
EmbedPathResult embed_path_B(const IntLattice& S, const IVec& h);

}  // namespace cubiclat
