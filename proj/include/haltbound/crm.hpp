#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "haltbound/bigint.hpp"

namespace haltbound::crm {

// Counting Register Machine: 9-bit fixed-width instructions over 4 unbounded
// non-negative registers. Every 9xL-bit string either decodes to a program or
// is rejected (opcode pattern 111 is the only invalid one), which makes "all
// programs of k bits" a well-defined enumerable set of 448^(k/9) elements.

inline constexpr unsigned kInstructionBits = 9;
inline constexpr unsigned kRegisterCount = 4;
inline constexpr std::uint64_t kEncodingsPerInstruction = 448;  // 7 opcodes x 4 regs x 16 args

enum class Opcode : std::uint8_t {
  Halt = 0,
  Inc = 1,   // r += 1
  Dec = 2,   // r = max(r - 1, 0)
  Dbl = 3,   // r *= 2
  Jz = 4,    // pc += offset if r == 0 else pc += 1
  Jnz = 5,   // pc += offset if r != 0 else pc += 1
  LoadC = 6  // r = imm
};

/// One decoded instruction: opcode(3) || reg(2) || arg(4). The arg nibble is
/// an unsigned immediate for LoadC, a signed two's-complement jump offset for
/// Jz/Jnz, and decoded-but-ignored payload for everything else.
struct Instruction {
  Opcode op;
  std::uint8_t reg;  // 0..3
  std::uint8_t arg;  // raw nibble, 0..15

  int jump_offset() const { return arg >= 8 ? static_cast<int>(arg) - 16 : arg; }
  bool operator==(const Instruction&) const = default;
};

struct CrmProgram {
  std::vector<Instruction> instructions;

  unsigned size_bits() const {
    return kInstructionBits * static_cast<unsigned>(instructions.size());
  }
  bool operator==(const CrmProgram&) const = default;
};

/// Parses a string of '0'/'1' characters, 9 bits per instruction.
/// Throws std::invalid_argument: "invalid length" when empty or not a
/// multiple of 9, "invalid opcode" when a chunk starts with 111.
CrmProgram decode(std::string_view bits);

/// Inverse of decode: 9 characters of '0'/'1' per instruction.
std::string encode(const CrmProgram& program);

/// Wire form "L:hex": bit length, colon, lowercase hex of the bit string
/// packed most-significant-bit first, final nibble zero-padded.
std::string to_wire(const CrmProgram& program);

/// Parses the wire form; padding bits are required to be zero.
CrmProgram from_wire(std::string_view text);

struct MachineState {
  std::uint32_t pc = 0;
  std::array<BigInt, kRegisterCount> regs;
  BigInt steps;
};

/// Executes one instruction. Returns false when the machine halted on this
/// step (Halt opcode, or the new pc left [0, L)); the executed instruction is
/// counted in state.steps either way. Total: no runtime errors exist.
bool step(const CrmProgram& program, MachineState& state);

struct Halted {
  BigInt t;            // exact executed-step count
  unsigned bitlen_t;   // floor(log2 t) + 1
};
struct BudgetExhausted {
  BigInt budget;
};
struct CycleDetected {
  BigInt start;   // step count at the first state of the cycle
  BigInt period;  // minimal period; the program provably never halts
};
using RunOutcome = std::variant<Halted, BudgetExhausted, CycleDetected>;

/// Runs from the fresh state (pc 0, registers 0) until halt, a proven
/// full-state repetition (when detect_cycles is set), or budget executed
/// steps. After each executed step the checks are: halted, cycle proven,
/// steps == budget — in that order, so a cycle confirmed exactly at the
/// budget boundary still reports CycleDetected. Cycle detection is Brent's
/// scheme over exact (pc, registers) equality: constant memory, no hashing,
/// and the reported (start, period) are the minimal ones. Deterministic.
/// Requires budget >= 1.
RunOutcome run(const CrmProgram& program, const BigInt& budget, bool detect_cycles);

/// The long-runner family: a program of O(log n) bits that builds n by
/// double-and-add, computes 2^n by repeated doubling, counts back down to
/// zero, and halts. Runs for witness_runtime(n) >= 2^(n+1) - 2 steps while
/// occupying at most 9 * (2 * bitlen(n) + 7) bits. Requires n >= 1.
CrmProgram witness(unsigned n);

/// Exact closed-form runtime of witness(n):
/// bitlen(n) + popcount(n) + 1 + 3n + 2^(n+1) + 1.
BigInt witness_runtime(unsigned n);

/// 2^(n+1) - 2, the count witness(n) performs in its final loop.
BigInt witness_step_bound(unsigned n);

/// Number of valid programs of exactly size_bits bits: 448^(size_bits/9).
BigInt program_count(unsigned size_bits);

/// The index-th valid program of the given size, in ascending numeric order
/// of the encoded bit string. Valid 9-bit chunks are exactly the values
/// 0..447, so programs are base-448 digit strings, most significant first.
CrmProgram program_at(unsigned size_bits, std::uint64_t index);

/// Ordered stream of all valid programs of one size class.
class Enumerator {
 public:
  explicit Enumerator(unsigned size_bits);

  std::optional<CrmProgram> next();
  std::uint64_t total() const { return total_; }

 private:
  unsigned size_bits_;
  std::uint64_t total_;
  std::uint64_t next_index_ = 0;
};

}  // namespace haltbound::crm
