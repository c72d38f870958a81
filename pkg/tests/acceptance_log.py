RESULTS: list[str] = []
