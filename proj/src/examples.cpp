#include "foq/examples.hpp"

#include "foq/parser.hpp"

namespace foq {

std::string qft_source() {
    return R"(// Quantum Fourier transform; inv reverses the qubit order.
decl rec(p) {
  p[1] *= H;
  call rot[2](p);
  call rec(p \ [1]);
},
decl rot[x](p) {
  if size(p) > 1 then {
    qcase p[2] of {
      0 -> skip;,
      1 -> p[1] *= PH[pi / 2^(x - 1)](x);
    }
    call rot[x + 1](p \ [2]);
  } else skip;
},
decl inv(p) {
  if size(p) > 1 then {
    SWAP(p[1], p[size(p)]);
    call inv(p \ [1, size(p)]);
  } else skip;
}
::
call rec(q);
call inv(q);
)";
}

std::string teleport_source() {
    return R"(// Input: payload of length n followed by 2n qubits in |0>.
decl createBell(p) {
  if size(p) >= 3 then {
    p[size(p) - 1] *= H;
    CNOT(p[size(p) - 1], p[size(p)]);
    call createBell(p \ [1, size(p) - 1, size(p)]);
  } else skip;
},
decl teleport(p) {
  if size(p) >= 3 then {
    CNOT(p[1], p[size(p) - 1]);
    p[1] *= H;
    CNOT(p[size(p) - 1], p[size(p)]);
    qcase p[1] of {
      0 -> skip;,
      1 -> p[size(p)] *= PH[pi](0);
    }
    call teleport(p \ [1, size(p) - 1, size(p)]);
  } else skip;
}
::
call createBell(q);
call teleport(q);
)";
}

std::string fibo_source() {
    return R"(decl proc(p) {
  if size(p) > 2 then
    qcase p[1] of {
      0 -> call proc(p \ [1]);,
      1 -> qcase p[2] of {
             0 -> skip;,
             1 -> call proc(p \ [1, 2]);
           }
    }
  else p[1] *= RY[pi / 4](0);
}
::
call proc(q);
)";
}

std::string rot_source() {
    return R"(decl rot[x](p) {
  if size(p) > 1 then {
    qcase p[2] of {
      0 -> skip;,
      1 -> p[1] *= PH[pi / 2^(x - 1)](x);
    }
    call rot[x + 1](p \ [2]);
  } else skip;
}
::
call rot[2](q);
)";
}

std::string double_recursion_source() {
    return R"(decl twice(p) {
  if size(p) > 0 then {
    p[1] *= NOT;
    call twice(p \ [1]);
    call twice(p \ [1]);
  } else skip;
}
::
call twice(q);
)";
}

Program qft_program() { return parse_program_or_throw(qft_source(), "qft.foq"); }
Program teleport_program() { return parse_program_or_throw(teleport_source(), "teleport.foq"); }
Program fibo_program() { return parse_program_or_throw(fibo_source(), "fibo.foq"); }

std::vector<std::pair<std::string, std::string>> example_sources() {
    return {
        {"qft", qft_source()},
        {"teleport", teleport_source()},
        {"fibo", fibo_source()},
        {"rot", rot_source()},
        {"ladder", R"(// Controlled rotations down the register, recursing in both qcase branches.
decl ladder[x](p) {
  if size(p) > 1 then
    qcase p[1] of {
      0 -> p[2] *= RY[pi / 2^x](x); call ladder[x + 1](p \ [1]);,
      1 -> call ladder[x + 1](p \ [1]); p[2] *= PH[pi / 3](0);
    }
  else p[1] *= H;
}
::
call ladder[1](q);
)"},
        {"mutual", R"(// Mutual recursion, alternating which end of the register is dropped.
decl even(p) {
  if size(p) > 0 then {
    p[1] *= RY[pi / 8](0);
    qcase p[1] of { 0 -> call odd(p \ [1]);, 1 -> skip; }
  } else skip;
},
decl odd(p) {
  if size(p) > 1 then {
    CNOT(p[1], p[size(p)]);
    call even(p \ [size(p)]);
  } else skip;
}
::
call even(q);
)"},
        {"reverse", R"(// Superposed recursion with an error-prone access guarded by size.
decl flip(p) {
  if size(p) >= 2 then
    qcase p[size(p)] of {
      0 -> call flip(p \ [1, size(p)]);,
      1 -> { p[1] *= NOT; call flip(p \ [size(p)]); }
    }
  else skip;
}
::
q[1] *= H;
call flip(q);
)"},
    };
}

}  // namespace foq
