#pragma once

// Recorded gate sequences that can be replayed from |0...0>, optionally with
// every gate conditioned on extra control qubits.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "eigenpower/linalg.hpp"
#include "eigenpower/statevector.hpp"

namespace eigenpower {

enum class OpKind {
  kStatePrep,
  kClockPrep,
  kClockUnprep,
  kEvolution,
  kInverseEvolution,
  kQft,
  kInverseQft,
  kRotation,
  kFlag,
};

using UnitaryList = std::shared_ptr<const std::vector<ComplexMatrix>>;

struct Op {
  OpKind kind;
  // One matrix for a plain gate; one per selector value when multiplexed.
  UnitaryList unitaries;
  std::optional<Register> selector;
  Register target;
  std::vector<Control> controls;
};

class Circuit {
 public:
  explicit Circuit(RegisterLayout layout) : layout_(std::move(layout)) {}

  const RegisterLayout& layout() const { return layout_; }
  const std::vector<Op>& ops() const { return ops_; }
  std::size_t count(OpKind kind) const;

  void add_gate(OpKind kind, UnitaryList u, const Register& target,
                std::vector<Control> controls = {});
  void add_gate(OpKind kind, ComplexMatrix u, const Register& target,
                std::vector<Control> controls = {});
  void add_multiplexed(OpKind kind, UnitaryList us, const Register& selector,
                       const Register& target, std::vector<Control> controls = {});
  // kind is kQft or kInverseQft.
  void add_qft(OpKind kind, const Register& target);

  // Applies ops [first, end) in place, each also conditioned on `extra`.
  void apply(StateVector& s, std::span<const Control> extra = {}, std::size_t first = 0) const;

  // The state this circuit prepares from |0...0>.
  StateVector run(unsigned qubit_cap = default_qubit_cap()) const;

 private:
  void check_controls(const Register& target, std::span<const Control> controls,
                      const Register* selector) const;

  RegisterLayout layout_;
  std::vector<Op> ops_;
};

UnitaryList make_unitary_list(std::vector<ComplexMatrix> us);

}  // namespace eigenpower
