#pragma once

#include <optional>
#include <string>
#include <vector>

#include "topmon/stream.hpp"
#include "topmon/verdict.hpp"

namespace topmon {

struct VerifyParams {
  long long depth = 32;          // D: indices examined for certification
  long long level = 10;          // default neighborhood level k
  long long extend_factor = 4;   // escape searches may look extend_factor*D ahead
  long long extend_cap = 100000; // absolute cap on extended enumeration
  int samples = 200;             // random supersets per level (sampled path)
  std::uint64_t seed = 0;
  long long qmax = 1'000'000;    // bounded-denominator exclusion sweep bound
  long long sweep_level_cap = 40;
  bool enable_qsweep = false;    // the 10^6 sweep only runs when asked
  long long mult_cap = 10'000;   // repeated-factor finiteness threshold
};

enum class ConvStatus { ConvergedAt, DivergedWith, Inconclusive };

std::string conv_status_name(ConvStatus s);

// ConvergedAt(core, k, D): every finite T with core <= T <= first D indices
// keeps the partial product inside U_k(candidate). `path` records whether the
// claim was established structurally (monotone / coordinate / valuation /
// discrete) or by extension checking, and how extensions were re-checked.
struct Certificate {
  std::vector<long long> core;  // enumerated positions
  long long level = 0;
  long long depth = 0;
  std::string path;
};

struct DivergenceWitness {
  std::string kind;    // partial-sums-unbounded | coordinate-unbounded |
                       // limit-outside-carrier | valuation-escape |
                       // discrete-not-stationary | denominator-sweep |
                       // one-step-escape
  std::string detail;  // re-checkable description with exact quantities
  std::optional<Element> limit_outside;  // for limit-outside-carrier
};

struct ConvergenceReport {
  ConvStatus status = ConvStatus::Inconclusive;
  std::optional<Certificate> certificate;
  std::optional<DivergenceWitness> witness;
  std::string note;

  bool converged() const { return status == ConvStatus::ConvergedAt; }
  bool diverged() const { return status == ConvStatus::DivergedWith; }
};

// Basis membership oracle: x in U_k(center) for the instance's basis.
bool neighborhood_contains(const Instance& ins, const Element& center, long long level,
                           const Element& x);

// Bounded certification of net convergence of `stream` to `candidate` at
// neighborhood level `level` within the first `depth` indices.
ConvergenceReport verify_convergence(const Instance& ins, const FactorStream& stream,
                                     const Element& candidate, long long level,
                                     long long depth, const VerifyParams& p = {});

// Candidate-free refutation: a re-checkable witness that no carrier element
// is the limit of the stream's net.
std::optional<DivergenceWitness> detect_divergence(const Instance& ins,
                                                   const FactorStream& stream,
                                                   const VerifyParams& p = {});

// True when every candidate limit within the window is eventually escaped by
// the powers x, x^2, ...; x must be a non-identity element.
bool powers_diverge(const Instance& ins, const Element& x, long long n_max, long long level,
                    const VerifyParams& p = {});

// --- multiset normal form --------------------------------------------------

struct MultisetNF {
  std::vector<std::pair<Element, long long>> entries;  // sorted, multiplicities >= 1
  FactorStream to_stream(InstanceKind kind) const;
};

// Thrown when a factor repeats beyond the finiteness threshold: a convergent
// product admits no infinitely repeated factor, so the repetition cap marks
// the stream as divergent rather than normalizable.
struct MultiplicityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

MultisetNF multiset_normal_form(const Instance& ins, const FactorStream& stream,
                                long long depth, long long mult_cap = 10'000);

// --- decimation / dissociation ---------------------------------------------

enum class CheckVerdict { Pass, Fail, Inconclusive };
std::string check_verdict_name(CheckVerdict v);

struct StructuredReport {
  CheckVerdict verdict = CheckVerdict::Inconclusive;
  std::string note;
  std::optional<Element> limit;
  std::optional<DivergenceWitness> witness;
  std::optional<ConvergenceReport> conv;
};

// Candidate pools for the decimation checks.
struct CandidatePool {
  std::vector<Element> explicit_pool;
  bool use_instance_oracle = false;  // coordinatewise finiteness (sequence instances)
  bool rational_sweep = false;       // exclude all p/q with q <= qmax (QPlus)
};

StructuredReport check_arbitrary_decimation(const Instance& ins, const FactorStream& parent,
                                            const IndexSelector& subset,
                                            const CandidatePool& pool, const VerifyParams& p);

StructuredReport check_finite_decimation(const Instance& ins, const FactorStream& parent,
                                         const std::set<long long>& removed_rule_indices,
                                         const CandidatePool& pool, const VerifyParams& p);

// Expands each outer factor by its expansion stream and evaluates the merged
// disjoint-union stream; PASS iff it certifies against the outer limit.
StructuredReport check_dissociation(const Instance& ins, const FactorStream& outer,
                                    const std::vector<FactorStream>& expansions,
                                    const Element& outer_limit, const VerifyParams& p);

// Variant taking the already-merged disjoint-union stream (for infinite
// expansion families with a canonical interleaving).
StructuredReport check_dissociation_merged(const Instance& ins, const FactorStream& outer,
                                           const FactorStream& merged, const Element& outer_limit,
                                           const VerifyParams& p);

// x in <M> by bounded exponent enumeration; exact for the free-type encodings.
BoundedVerdict finite_span_contains(const Instance& ins, const std::vector<Element>& M,
                                    const Element& x, long long degree_bound);

// Exhaustive exclusion of every rational p/q, q <= qmax, as a limit of a
// value-monotone QPlus stream. Returns the witness on success along with the
// largest exclusion level that was needed.
struct SweepResult {
  bool all_excluded = false;
  long long max_level_needed = 0;
  Rat min_gap;
  long long worst_q = 0;
  std::string detail;
};
SweepResult qplus_denominator_sweep(const Instance& ins, const FactorStream& stream,
                                    long long qmax, long long level_cap, long long depth);

}  // namespace topmon
