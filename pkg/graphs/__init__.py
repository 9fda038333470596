# Graph model, I/O and random families
