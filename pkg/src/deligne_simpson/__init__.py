"""Deligne-Simpson problem: criterion, middle convolution and rigid constructions."""
