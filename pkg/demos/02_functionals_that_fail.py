"""
Functionals that are not integrals
==================================

Three properties pick out integration functionals: weakly averaging,
affine and preserving limits of increasing chains.  Each fixture below
breaks exactly one, and the checker reports a concrete witness.
"""

from affprob import NotInT, adversarial, phi
from affprob.functionals import property_gate

for kind in sorted(adversarial.PROPERTY_KINDS):
    fixture = adversarial.property_fixture(kind)
    print(f"\n{kind} ({adversarial.PROPERTY_KINDS[kind]})")
    for result in property_gate(fixture.functional):
        status = "ok" if result.passed else "FAILS"
        print(f"  {result.name:18} {status}")
        if not result.passed:
            print("    witness:", result.witness)
    try:
        phi(fixture.functional)
    except NotInT as exc:
        print("  phi refuses:", exc)

# %% Skipping the property checks, phi still notices when the masses do not sum to 1.
tail = adversarial.build("tail-mixture").functional
try:
    phi(tail, gate=False)
except NotInT as exc:
    print("\ntail mixture without the gate: deficit", exc.deficit, "(mass escaping to infinity)")
