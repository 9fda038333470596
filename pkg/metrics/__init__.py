# Distance measures
