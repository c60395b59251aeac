from hypothesis import settings

settings.register_profile("numeric", deadline=None, max_examples=60)
settings.load_profile("numeric")
