// quotient experiments
