#include "eigenpower/circuit.hpp"

#include <algorithm>
#include <string>

#include "eigenpower/error.hpp"

namespace eigenpower {

namespace {

constexpr double kUnitaryTolerance = 1e-8;

void check_unitaries(const std::vector<ComplexMatrix>& us, const Register& target) {
  for (const auto& u : us) {
    if (u.dim() != target.dimension()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "gate dimension " + std::to_string(u.dim()) + " does not match register '" +
                      target.name + "'");
    }
    const double residual = unitarity_residual(u);
    if (!(residual <= kUnitaryTolerance)) {
      throw Error(ErrorCode::kNotUnitary,
                  "gate is not unitary (residual " + std::to_string(residual) + ")");
    }
  }
}

std::vector<Control> merged(const std::vector<Control>& own, std::span<const Control> extra) {
  std::vector<Control> all(own);
  all.insert(all.end(), extra.begin(), extra.end());
  return all;
}

}  // namespace

UnitaryList make_unitary_list(std::vector<ComplexMatrix> us) {
  return std::make_shared<const std::vector<ComplexMatrix>>(std::move(us));
}

std::size_t Circuit::count(OpKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(ops_.begin(), ops_.end(), [&](const Op& op) { return op.kind == kind; }));
}

void Circuit::check_controls(const Register& target, std::span<const Control> controls,
                             const Register* selector) const {
  const unsigned q = layout_.total_qubits();
  if (target.offset + target.width > q || target.width == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "register '" + target.name + "' outside circuit");
  }
  for (const auto& c : controls) {
    if (c.qubit >= q) throw Error(ErrorCode::kDimensionMismatch, "control outside circuit");
    if (target.mask() & (std::uint64_t{1} << c.qubit)) {
      throw Error(ErrorCode::kOverlappingRegisters, "control qubit inside target register");
    }
  }
  if (selector && (selector->mask() & target.mask())) {
    throw Error(ErrorCode::kOverlappingRegisters, "selector overlaps target register");
  }
}

void Circuit::add_gate(OpKind kind, UnitaryList u, const Register& target,
                       std::vector<Control> controls) {
  check_controls(target, controls, nullptr);
  if (!u || u->size() != 1) {
    throw Error(ErrorCode::kDimensionMismatch, "plain gate needs exactly one matrix");
  }
  check_unitaries(*u, target);
  ops_.push_back(Op{kind, std::move(u), std::nullopt, target, std::move(controls)});
}

void Circuit::add_gate(OpKind kind, ComplexMatrix u, const Register& target,
                       std::vector<Control> controls) {
  add_gate(kind, make_unitary_list({std::move(u)}), target, std::move(controls));
}

void Circuit::add_multiplexed(OpKind kind, UnitaryList us, const Register& selector,
                              const Register& target, std::vector<Control> controls) {
  check_controls(target, controls, &selector);
  if (!us || us->size() != selector.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "need one unitary per selector value");
  }
  check_unitaries(*us, target);
  ops_.push_back(Op{kind, std::move(us), selector, target, std::move(controls)});
}

void Circuit::add_qft(OpKind kind, const Register& target) {
  if (kind != OpKind::kQft && kind != OpKind::kInverseQft) {
    throw Error(ErrorCode::kInvalidConfig, "add_qft needs a QFT op kind");
  }
  check_controls(target, {}, nullptr);
  ops_.push_back(Op{kind, nullptr, std::nullopt, target, {}});
}

void Circuit::apply(StateVector& s, std::span<const Control> extra, std::size_t first) const {
  for (std::size_t i = first; i < ops_.size(); ++i) {
    const Op& op = ops_[i];
    const auto controls = merged(op.controls, extra);
    if (op.kind == OpKind::kQft || op.kind == OpKind::kInverseQft) {
      s.apply_qft(op.target, op.kind == OpKind::kInverseQft, controls);
    } else if (op.selector) {
      s.apply_multiplexed(*op.unitaries, *op.selector, op.target, controls);
    } else {
      s.apply_gate(op.unitaries->front(), op.target, controls);
    }
  }
}

StateVector Circuit::run(unsigned qubit_cap) const {
  StateVector s = init_zero(layout_, qubit_cap);
  apply(s);
  return s;
}

}  // namespace eigenpower
