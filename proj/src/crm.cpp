#include "haltbound/crm.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace haltbound::crm {

namespace {

constexpr std::uint8_t kInvalidOpcode = 7;

Instruction instruction_from_bits(std::uint16_t chunk) {
  // chunk is the 9-bit value: opcode(3) || reg(2) || arg(4), msb first.
  std::uint8_t op = static_cast<std::uint8_t>(chunk >> 6);
  if (op == kInvalidOpcode) throw std::invalid_argument("invalid opcode: bit pattern 111");
  return Instruction{static_cast<Opcode>(op), static_cast<std::uint8_t>((chunk >> 4) & 3),
                     static_cast<std::uint8_t>(chunk & 15)};
}

std::uint16_t instruction_to_bits(const Instruction& ins) {
  return static_cast<std::uint16_t>((static_cast<std::uint16_t>(ins.op) << 6) |
                                    (static_cast<std::uint16_t>(ins.reg & 3) << 4) |
                                    (ins.arg & 15));
}

int hex_digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

struct CoreState {
  std::uint32_t pc = 0;
  std::array<BigInt, kRegisterCount> regs;

  bool operator==(const CoreState& o) const { return pc == o.pc && regs == o.regs; }
};

/// One transition of the halt-free part of the semantics. Returns false when
/// this step halts the machine (Halt, or pc leaving [0, L)).
bool advance(const CrmProgram& program, CoreState& s) {
  const Instruction& ins = program.instructions[s.pc];
  switch (ins.op) {
    case Opcode::Halt:
      return false;
    case Opcode::Inc:
      s.regs[ins.reg] += 1ul;
      s.pc += 1;
      break;
    case Opcode::Dec:
      if (!s.regs[ins.reg].is_zero()) s.regs[ins.reg] -= 1ul;
      s.pc += 1;
      break;
    case Opcode::Dbl:
      s.regs[ins.reg] <<= 1;
      s.pc += 1;
      break;
    case Opcode::Jz:
    case Opcode::Jnz: {
      bool zero = s.regs[ins.reg].is_zero();
      bool taken = (ins.op == Opcode::Jz) ? zero : !zero;
      if (taken) {
        // Signed move on an unsigned pc; leaving [0, L) is a clean halt and
        // the wraparound below can only land far outside the program.
        s.pc = static_cast<std::uint32_t>(static_cast<std::int64_t>(s.pc) + ins.jump_offset());
      } else {
        s.pc += 1;
      }
      break;
    }
    case Opcode::LoadC:
      s.regs[ins.reg] = BigInt(static_cast<unsigned long>(ins.arg));
      s.pc += 1;
      break;
  }
  return s.pc < program.instructions.size();
}

}  // namespace

CrmProgram decode(std::string_view bits) {
  if (bits.empty() || bits.size() % kInstructionBits != 0)
    throw std::invalid_argument("invalid length: need a positive multiple of 9 bits, got " +
                                std::to_string(bits.size()));
  CrmProgram program;
  program.instructions.reserve(bits.size() / kInstructionBits);
  for (std::size_t i = 0; i < bits.size(); i += kInstructionBits) {
    std::uint16_t chunk = 0;
    for (unsigned b = 0; b < kInstructionBits; ++b) {
      char c = bits[i + b];
      if (c != '0' && c != '1')
        throw std::invalid_argument("invalid bit string: expected '0' or '1'");
      chunk = static_cast<std::uint16_t>((chunk << 1) | (c - '0'));
    }
    program.instructions.push_back(instruction_from_bits(chunk));
  }
  return program;
}

std::string encode(const CrmProgram& program) {
  std::string bits;
  bits.reserve(program.instructions.size() * kInstructionBits);
  for (const Instruction& ins : program.instructions) {
    std::uint16_t chunk = instruction_to_bits(ins);
    for (int b = kInstructionBits - 1; b >= 0; --b) bits.push_back(((chunk >> b) & 1) ? '1' : '0');
  }
  return bits;
}

std::string to_wire(const CrmProgram& program) {
  std::string bits = encode(program);
  std::string hex;
  hex.reserve((bits.size() + 3) / 4);
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    unsigned nibble = 0;
    for (unsigned b = 0; b < 4; ++b) {
      nibble <<= 1;
      if (i + b < bits.size() && bits[i + b] == '1') nibble |= 1;
    }
    hex.push_back("0123456789abcdef"[nibble]);
  }
  return std::to_string(bits.size()) + ":" + hex;
}

CrmProgram from_wire(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("wire form must be 'L:hex'");
  unsigned long length = 0;
  for (char c : text.substr(0, colon)) {
    if (c < '0' || c > '9') throw std::invalid_argument("wire form must be 'L:hex'");
    length = length * 10 + static_cast<unsigned long>(c - '0');
  }
  std::string_view hex = text.substr(colon + 1);
  if (hex.size() != (length + 3) / 4)
    throw std::invalid_argument("wire hex length does not match the bit-length prefix");
  std::string bits;
  bits.reserve(hex.size() * 4);
  for (char c : hex) {
    int v = hex_digit_value(c);
    if (v < 0) throw std::invalid_argument("wire hex must be lowercase hexadecimal");
    for (int b = 3; b >= 0; --b) bits.push_back(((v >> b) & 1) ? '1' : '0');
  }
  for (std::size_t i = length; i < bits.size(); ++i)
    if (bits[i] != '0') throw std::invalid_argument("nonzero padding bits in wire form");
  bits.resize(length);
  return decode(bits);
}

bool step(const CrmProgram& program, MachineState& state) {
  if (state.pc >= program.instructions.size()) throw std::logic_error("pc outside the program");
  CoreState core{state.pc, std::move(state.regs)};
  bool running = advance(program, core);
  state.pc = core.pc;
  state.regs = std::move(core.regs);
  state.steps += 1ul;
  return running;
}

RunOutcome run(const CrmProgram& program, const BigInt& budget, bool detect_cycles) {
  if (budget < BigInt(1)) throw std::domain_error("budget must be >= 1");

  CoreState hare;
  BigInt steps(0);

  // Brent's cycle finding: `tortoise` trails at the last power-of-two step
  // count; equality of full states proves a repetition with minimal period.
  CoreState tortoise = hare;
  BigInt power(1);
  BigInt lambda(0);

  while (true) {
    bool running = advance(program, hare);
    steps += 1ul;
    if (!running) {
      return Halted{steps, static_cast<unsigned>(steps.bit_length())};
    }
    if (detect_cycles) {
      lambda += 1ul;
      if (tortoise == hare) {
        // Period is lambda; locate the first repetition by sliding two
        // cursors lambda apart from the initial state.
        CoreState front;
        for (BigInt i(0); i < lambda; i += 1ul) advance(program, front);
        CoreState back;
        BigInt start(0);
        while (!(back == front)) {
          advance(program, back);
          advance(program, front);
          start += 1ul;
        }
        return CycleDetected{start, lambda};
      }
      if (lambda == power) {
        tortoise = hare;
        power <<= 1;
        lambda = BigInt(0);
      }
    }
    if (steps == budget) return BudgetExhausted{budget};
  }
}

CrmProgram witness(unsigned n) {
  if (n == 0) throw std::domain_error("witness requires n >= 1");
  CrmProgram p;
  auto emit = [&p](Opcode op, std::uint8_t reg, std::uint8_t arg) {
    p.instructions.push_back(Instruction{op, reg, arg});
  };
  // r0 := n by double-and-add over n's bits, most significant first.
  for (int b = static_cast<int>(BigInt(static_cast<unsigned long>(n)).bit_length()) - 1; b >= 0;
       --b) {
    emit(Opcode::Dbl, 0, 0);
    if ((n >> b) & 1) emit(Opcode::Inc, 0, 0);
  }
  emit(Opcode::LoadC, 1, 1);
  // r1 := 2^n: doubled once per countdown of r0.
  emit(Opcode::Dbl, 1, 0);
  emit(Opcode::Dec, 0, 0);
  emit(Opcode::Jnz, 0, static_cast<std::uint8_t>(-2 & 15));
  // Count r1 back to zero: 2 * 2^n further steps.
  emit(Opcode::Dec, 1, 0);
  emit(Opcode::Jnz, 1, static_cast<std::uint8_t>(-1 & 15));
  emit(Opcode::Halt, 0, 0);
  return p;
}

BigInt witness_runtime(unsigned n) {
  if (n == 0) throw std::domain_error("witness requires n >= 1");
  unsigned long bitlen = BigInt(static_cast<unsigned long>(n)).bit_length();
  unsigned long ones = static_cast<unsigned long>(__builtin_popcount(n));
  BigInt r = BigInt::pow2(static_cast<unsigned long>(n) + 1);
  r += bitlen + ones + 3ul * n + 2ul;
  return r;
}

BigInt witness_step_bound(unsigned n) {
  if (n == 0) throw std::domain_error("witness requires n >= 1");
  return BigInt::pow2_minus(static_cast<unsigned long>(n) + 1, 2);
}

BigInt program_count(unsigned size_bits) {
  if (size_bits == 0 || size_bits % kInstructionBits != 0)
    throw std::domain_error("size must be a positive multiple of 9 bits");
  BigInt count(1);
  for (unsigned i = 0; i < size_bits / kInstructionBits; ++i)
    count = count * BigInt(kEncodingsPerInstruction);
  return count;
}

CrmProgram program_at(unsigned size_bits, std::uint64_t index) {
  unsigned length = size_bits / kInstructionBits;
  if (size_bits == 0 || size_bits % kInstructionBits != 0)
    throw std::domain_error("size must be a positive multiple of 9 bits");
  CrmProgram program;
  program.instructions.resize(length);
  for (unsigned slot = length; slot-- > 0;) {
    std::uint16_t chunk = static_cast<std::uint16_t>(index % kEncodingsPerInstruction);
    index /= kEncodingsPerInstruction;
    program.instructions[slot] = instruction_from_bits(chunk);
  }
  if (index != 0) throw std::domain_error("program index out of range for this size");
  return program;
}

Enumerator::Enumerator(unsigned size_bits) : size_bits_(size_bits) {
  BigInt count = program_count(size_bits);
  if (!count.fits_u64()) throw std::domain_error("size class too large to enumerate");
  total_ = count.to_u64();
}

std::optional<CrmProgram> Enumerator::next() {
  if (next_index_ >= total_) return std::nullopt;
  return program_at(size_bits_, next_index_++);
}

}  // namespace haltbound::crm
