from hypothesis import settings

settings.register_profile("slowbuild", deadline=None, max_examples=60)
settings.load_profile("slowbuild")
