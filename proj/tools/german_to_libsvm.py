#!/usr/bin/env python3
"""Re-encode the UCI Statlog German credit file (german.data) as 24 numeric
LIBSVM features.

The official LIBSVM ``german.numer`` file is derived from Strathclyde's
``german.data-numeric``. When that file is not available, this script
produces a stand-in with the same shape (1000 examples, 24 features,
300 positives : 700 negatives) from the categorical source:

  1  checking account status      A1x  -> x
  2  duration in months
  3  credit history               A3x  -> x
  4  credit amount / 100, rounded half up
  5  savings                      A6x  -> x
  6  employment since             A7x  -> x
  7  personal status and sex      A9x  -> x
  8  present residence since
  9  property                     A12x -> x
 10  age in years
 11  other installment plans      A14x -> x
 12  number of existing credits
 13  number of people liable
 14  telephone                    A19x -> x
 15  foreign worker               A20x -> x
 16  guarantor: co-applicant      (A102)
 17  guarantor: guarantor         (A103)
 18  housing: own                 (A152)
 19  housing: for free            (A153)
 20  purpose: car (new)           (A40)
 21  purpose: car (used)          (A41)
 22  purpose: radio/television    (A43)
 23  job: unskilled resident      (A172)
 24  job: skilled employee        (A173)

Class 2 (bad credit, the rare class) becomes +1; class 1 becomes -1.
Zero-valued features are omitted from the output lines.

usage: german_to_libsvm.py german.data > german.reconstructed.libsvm
"""

import sys


def code(token, prefix):
    assert token.startswith(prefix), (token, prefix)
    return int(token[len(prefix):])


def encode(fields):
    (status, duration, history, purpose, amount, savings, employment,
     _installment, personal, guarantors, residence, prop, age, plans,
     housing, credits, job, liable, phone, foreign, klass) = fields
    values = [
        code(status, "A1"),
        int(duration),
        code(history, "A3"),
        (int(amount) + 50) // 100,
        code(savings, "A6"),
        code(employment, "A7"),
        code(personal, "A9"),
        int(residence),
        code(prop, "A12"),
        int(age),
        code(plans, "A14"),
        int(credits),
        int(liable),
        code(phone, "A19"),
        code(foreign, "A20"),
        int(guarantors == "A102"),
        int(guarantors == "A103"),
        int(housing == "A152"),
        int(housing == "A153"),
        int(purpose == "A40"),
        int(purpose == "A41"),
        int(purpose == "A43"),
        int(job == "A172"),
        int(job == "A173"),
    ]
    label = "+1" if klass == "2" else "-1"
    feats = " ".join(f"{i}:{v}" for i, v in enumerate(values, 1) if v != 0)
    return f"{label} {feats}"


def main():
    with open(sys.argv[1]) as src:
        for line in src:
            fields = line.split()
            if fields:
                print(encode(fields))


if __name__ == "__main__":
    main()
