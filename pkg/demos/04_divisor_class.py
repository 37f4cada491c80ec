"""
The divisor class in genus 6
============================

Assemble every coefficient and run the consistency checks.
"""

from netclass import pipeline

report = pipeline.run_pipeline(2)
print(report.divisor_class)
for ch in report.checks:
    print("PASS" if ch.passed else "FAIL", ch.name)

###############################################################################
# Larger genus: boundary coefficients in the middle stay unknown.

print(pipeline.full_class(3))

###############################################################################
# Independence from the Weierstrass and Gieseker-Petri classes.

cert = pipeline.span_check()
print(cert.rank, cert.pivots, cert.minor)
