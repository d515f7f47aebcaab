class SpiralSimError(Exception):
    pass


class InvalidConfig(SpiralSimError, ValueError):
    pass


class OverpopulatedGrid(InvalidConfig):
    pass


class VisionExceedsGrid(InvalidConfig):
    pass


class InvalidMediaLevels(InvalidConfig):
    pass


class InvalidPopulation(SpiralSimError, ValueError):
    pass


class ConfigSyntaxError(InvalidConfig):
    def __init__(self, message: str, line: int | None = None, key: str | None = None):
        self.line = line
        self.key = key
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class InsufficientData(SpiralSimError, ValueError):
    pass


class DegenerateVariance(SpiralSimError, ValueError):
    pass


class NoConvergedRuns(SpiralSimError):
    pass


class UnknownPreset(SpiralSimError, KeyError):
    def __str__(self):
        return self.args[0] if self.args else "unknown preset"
